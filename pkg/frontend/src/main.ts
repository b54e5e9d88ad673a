// DOM wiring for the explorer page. Everything interesting happens in the
// controller and the pure modules; this file only moves data to widgets.

import { ExplorerApi, type SegmentSummary } from "./api.js";
import { BlendController } from "./controller.js";
import { buildGridModel, drawGrid } from "./grid.js";
import type { ViewState } from "./state.js";

const api = new ExplorerApi("");
const controller = new BlendController(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>("grid");
const slider = el<HTMLInputElement>("slider");
const sliderReadout = el<HTMLSpanElement>("slider-value");
const selectA = el<HTMLSelectElement>("segment-a");
const selectB = el<HTMLSelectElement>("segment-b");
const filterBox = el<HTMLSelectElement>("filter");
const warnBadge = el<HTMLSpanElement>("warn-badge");
const errorBanner = el<HTMLDivElement>("error-banner");
const metricsTable = el<HTMLTableSectionElement>("metrics-body");
const verdicts = el<HTMLDivElement>("verdicts");
const randomButton = el<HTMLButtonElement>("randomize");

function fillPicker(select: HTMLSelectElement, segments: SegmentSummary[]): void {
  select.innerHTML = "";
  for (const seg of segments) {
    const option = document.createElement("option");
    option.value = seg.id;
    option.textContent = `${seg.id}`;
    select.appendChild(option);
  }
}

function renderVerdict(name: string, value: boolean | "unknown"): string {
  const text = value === "unknown" ? "unknown" : value ? "yes" : "no";
  return `<span class="verdict verdict-${text}">${name}: ${text}</span>`;
}

function render(state: ViewState): void {
  sliderReadout.textContent = state.t.toFixed(2);
  errorBanner.textContent = state.error ?? "";
  errorBanner.style.display = state.error ? "block" : "none";
  if (!state.payload) return;
  const model = buildGridModel(state.payload.tiles);
  drawGrid(canvas, model);
  warnBadge.style.display = model.unknownChars.length ? "inline" : "none";
  warnBadge.textContent = model.unknownChars.length
    ? `unknown tiles: ${model.unknownChars.join(" ")}`
    : "";
  metricsTable.innerHTML = Object.entries(state.payload.metric_vector)
    .map(([name, value]) => `<tr><td>${name}</td><td>${value.toFixed(5)}</td></tr>`)
    .join("");
  verdicts.innerHTML = [
    `<span class="category">${state.payload.category}</span>`,
    renderVerdict("LR agent", state.payload.lr_playable),
    renderVerdict("LOZ agent", state.payload.loz_playable),
  ].join(" ");
}

async function loadSegments(): Promise<void> {
  const segments = await api.listSegments(filterBox.value);
  fillPicker(selectA, segments);
  fillPicker(selectB, segments);
  if (segments.length > 1) {
    selectA.value = segments[0].id;
    selectB.value = segments[segments.length - 1].id;
    controller.select("a", segments[0].id);
    controller.select("b", segments[segments.length - 1].id);
  }
}

controller.onChange(render);
slider.addEventListener("input", () => controller.moveSlider(Number(slider.value)));
selectA.addEventListener("change", () => controller.select("a", selectA.value));
selectB.addEventListener("change", () => controller.select("b", selectB.value));
filterBox.addEventListener("change", () => void loadSegments());
randomButton.addEventListener("click", () => controller.randomize());

void loadSegments();
