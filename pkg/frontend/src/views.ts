/**
 * DOM rendering of the playground model: one panel per technique plus a raw
 * event console. Rendering is a pure projection of PlaygroundModel; no
 * gesture decisions happen here.
 */

import { PlaygroundModel } from "./model.js";

const MENU_ITEMS = 8;
const MENU_TIMEOUT_MS = 2000; // display scale for the dwell ring

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export class Views {
  private renderedVersion = -1;

  render(model: PlaygroundModel): void {
    if (model.version === this.renderedVersion) return;
    this.renderedVersion = model.version;
    this.renderSensors(model);
    this.renderScroll(model);
    this.renderText(model);
    this.renderMap(model);
    this.renderMenu(model);
    this.renderFlick(model);
    this.renderNav(model);
    this.renderConsole(model);
  }

  private renderSensors(model: PlaygroundModel): void {
    const s = model.sensors;
    const face = s.facePresent
      ? `PRESENT (${s.fx?.toFixed(0)}, ${s.fy?.toFixed(0)}) fs=${s.fs?.toFixed(0)} fa=${s.fa?.toFixed(1)} level=${s.level ?? "-"}`
      : "ABSENT";
    el("sensor-face").textContent = face;
    el("sensor-attitude").textContent =
      s.tiltDeg === null ? "no IMU yet" : `tilt ${s.tiltDeg.toFixed(1)} / roll ${s.rollDeg?.toFixed(1)}`;
    el("sensor-touch").textContent = s.touchDown ? "DOWN" : "UP";
  }

  private renderScroll(model: PlaygroundModel): void {
    el("scroll-multiplier").textContent = `x${model.scroll.multiplier}`;
    const needle = el("scroll-needle");
    const levelIndex = [0.25, 0.5, 1, 2, 4, 8].indexOf(model.scroll.multiplier);
    const angle = levelIndex >= 0 ? -80 + levelIndex * 32 : 0;
    needle.style.transform = `rotate(${angle}deg)`;
    const strip = el("scroll-strip");
    strip.style.backgroundPositionY = `${-model.scroll.offsetPx % 48}px`;
    el("scroll-offset").textContent = `${model.scroll.offsetPx.toFixed(0)} px`;
  }

  private renderText(model: PlaygroundModel): void {
    const doc = "The quick brown fox jumps over the lazy dog.";
    const i = Math.max(0, Math.min(doc.length, model.text.cursor));
    el("text-line").innerHTML =
      `<span>${doc.slice(0, i)}</span><span class="caret"></span><span>${doc.slice(i)}</span>`;
    el("text-direction").textContent = model.text.lastDirection ?? "idle";
  }

  private renderMap(model: PlaygroundModel): void {
    el("map-mode").textContent = model.map.mode === "ThreeD" ? "3D" : "2D";
    const scene = el("map-scene");
    scene.classList.toggle("three-d", model.map.mode === "ThreeD");
    const arrow = el("map-glimpse-arrow");
    arrow.style.transform = `rotate(${model.map.glimpseDeg}deg)`;
    arrow.style.opacity = model.map.glimpseDeg === 0 ? "0.25" : "1";
    el("map-glimpse").textContent = `${model.map.glimpseDeg} deg`;
  }

  private renderMenu(model: PlaygroundModel): void {
    const wheel = el("menu-wheel");
    for (let i = 0; i < MENU_ITEMS; i++) {
      const sector = wheel.querySelector(`[data-item="${i}"]`) as HTMLElement | null;
      if (sector) {
        sector.classList.toggle("highlighted", model.menu.item === i);
        sector.classList.toggle("selected", model.menu.selected === i);
      }
    }
    const frac = Math.min(1, model.menu.dwellMs / MENU_TIMEOUT_MS);
    const ring = el("menu-ring");
    ring.style.background = `conic-gradient(var(--accent) ${frac * 360}deg, transparent 0)`;
    el("menu-status").textContent =
      model.menu.selected !== null
        ? `selected item ${model.menu.selected}`
        : model.menu.item !== null
          ? `item ${model.menu.item}`
          : "inactive";
  }

  private renderFlick(model: PlaygroundModel): void {
    const badge = el("flick-badge");
    if (!model.flick) {
      badge.textContent = "no gesture yet";
      badge.dataset.rank = "0";
      return;
    }
    badge.textContent = `${model.flick.kind} ${model.flick.direction}`;
    badge.dataset.rank = String(model.flick.rank);
    el("flick-rank").textContent = "★".repeat(model.flick.rank);
  }

  private renderNav(model: PlaygroundModel): void {
    const canvas = el("nav-content");
    const n = model.nav;
    canvas.style.transform =
      `translate(${n.panX}px, ${n.panY}px) scale(${n.zoom}) rotate(${n.rotationDeg}deg)`;
    el("nav-readout").textContent =
      `pan (${n.panX.toFixed(0)}, ${n.panY.toFixed(0)}) zoom ${n.zoom.toFixed(2)} rot ${n.rotationDeg.toFixed(0)}`;
    const marker = el("nav-anchor");
    if (n.anchor) {
      marker.style.display = "block";
      marker.style.left = `${(n.anchor.x / 640) * 100}%`;
      marker.style.top = `${(n.anchor.y / 1136) * 100}%`;
    } else {
      marker.style.display = "none";
    }
  }

  private renderConsole(model: PlaygroundModel): void {
    const node = el("console");
    const tail = model.consoleLines.slice(-120);
    node.textContent = tail.join("\n");
    node.scrollTop = node.scrollHeight;
    const banner = el("error-banner");
    banner.textContent = model.lastError ? `gateway error: ${model.lastError}` : "";
    banner.style.display = model.lastError ? "block" : "none";
  }
}
