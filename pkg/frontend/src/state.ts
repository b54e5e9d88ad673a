// View state and the pure update rules: slider clamping, endpoint selection
// (a !== b unless explicitly pinned), and stale-response discarding by
// request sequence number.

import type { BlendPayload } from "./api.js";

export interface ViewState {
  a: string | null;
  b: string | null;
  t: number;
  filter: string;
  payload: BlendPayload | null;
  appliedSeq: number;
  error: string | null;
}

export function initialState(): ViewState {
  return { a: null, b: null, t: 0, filter: "all", payload: null, appliedSeq: 0, error: null };
}

export function clampT(t: number): number {
  if (Number.isNaN(t)) return 0;
  return Math.min(1, Math.max(0, t));
}

export function setSlider(state: ViewState, t: number): ViewState {
  return { ...state, t: clampT(t) };
}

export function selectEndpoint(
  state: ViewState,
  which: "a" | "b",
  id: string,
  pinBoth = false,
): ViewState {
  const other = which === "a" ? state.b : state.a;
  if (!pinBoth && other === id) {
    // picking the other endpoint's id swaps them instead of duplicating
    return which === "a"
      ? { ...state, a: id, b: state.a }
      : { ...state, b: id, a: state.b };
  }
  return which === "a" ? { ...state, a: id } : { ...state, b: id };
}

export function applyResponse(
  state: ViewState,
  payload: BlendPayload,
  seq: number,
): ViewState {
  if (seq <= state.appliedSeq) {
    return state; // stale: an answer for an older slider position
  }
  return { ...state, payload, appliedSeq: seq, error: null };
}

export function applyError(state: ViewState, message: string, clearSelection = false): ViewState {
  const cleared = clearSelection ? { a: null, b: null, payload: null } : {};
  return { ...state, ...cleared, error: message };
}

export function canBlend(state: ViewState): state is ViewState & { a: string; b: string } {
  return state.a !== null && state.b !== null;
}
