// Glue between the view state, the throttled request stream, and the API.
// Slider movement is throttled to the service-friendly rate; responses are
// tagged with a sequence number so late answers for older positions never
// overwrite newer ones.

import { ExplorerApi, type BlendPayload, ApiError } from "./api.js";
import {
  applyError,
  applyResponse,
  canBlend,
  initialState,
  selectEndpoint,
  setSlider,
  type ViewState,
} from "./state.js";
import { throttleTrailing, type ThrottleOptions } from "./rateLimit.js";

export type Listener = (state: ViewState) => void;

export class BlendController {
  private state: ViewState = initialState();
  private seq = 0;
  private listeners: Listener[] = [];
  private issue: (t: number) => void;
  private settled: Promise<void> = Promise.resolve();
  private pendingResolve: (() => void) | null = null;
  private inFlight = 0;

  constructor(private api: ExplorerApi, throttleOptions: ThrottleOptions = {}) {
    this.issue = throttleTrailing((t: number) => this.requestBlend(t), throttleOptions);
  }

  getState(): ViewState {
    return this.state;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  /** Resolves once no request is in flight or queued (for tests/UX spinners). */
  whenSettled(): Promise<void> {
    return this.settled;
  }

  private update(next: ViewState): void {
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  private trackInFlight(delta: number): void {
    this.inFlight += delta;
    if (this.inFlight === 0 && this.pendingResolve) {
      this.pendingResolve();
      this.pendingResolve = null;
    } else if (this.inFlight > 0 && this.pendingResolve === null) {
      this.settled = new Promise((resolve) => {
        this.pendingResolve = resolve;
      });
    }
  }

  select(which: "a" | "b", id: string, pinBoth = false): void {
    this.update(selectEndpoint(this.state, which, id, pinBoth));
    if (canBlend(this.state)) this.issue(this.state.t);
  }

  moveSlider(t: number): void {
    this.update(setSlider(this.state, t));
    if (canBlend(this.state)) this.issue(this.state.t);
  }

  randomize(seed?: number): void {
    const seqNow = ++this.seq;
    this.trackInFlight(1);
    this.api
      .random(seed)
      .then((payload) => this.update(applyResponse(this.state, payload, seqNow)))
      .catch((err) => this.update(applyError(this.state, String(err))))
      .finally(() => this.trackInFlight(-1));
  }

  private requestBlend(t: number): void {
    if (!canBlend(this.state)) return;
    const { a, b } = this.state;
    const seqNow = ++this.seq;
    this.trackInFlight(1);
    this.api
      .blend(a, b, t)
      .then((payload: BlendPayload) => {
        this.update(applyResponse(this.state, payload, seqNow));
      })
      .catch((err) => {
        if (err instanceof ApiError && err.status === 404) {
          this.update(applyError(this.state, "segment vanished; selection cleared", true));
        } else {
          this.update(applyError(this.state, `request failed, kept last view: ${err}`));
        }
      })
      .finally(() => this.trackInFlight(-1));
  }
}
