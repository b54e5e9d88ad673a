import { describe, expect, it } from "vitest";

import { throttleTrailing } from "../src/rateLimit.js";

/** Deterministic clock + timer queue for driving the throttle by hand. */
function fakeTime() {
  let now = 0;
  const timers: { at: number; fn: () => void; id: number }[] = [];
  let nextId = 1;
  return {
    now: () => now,
    setTimer: (fn: () => void, ms: number) => {
      const id = nextId++;
      timers.push({ at: now + ms, fn, id });
      return id;
    },
    clearTimer: (handle: unknown) => {
      const idx = timers.findIndex((t) => t.id === handle);
      if (idx >= 0) timers.splice(idx, 1);
    },
    advance: (ms: number) => {
      const target = now + ms;
      for (;;) {
        const due = timers.filter((t) => t.at <= target).sort((x, y) => x.at - y.at)[0];
        if (!due) break;
        timers.splice(timers.indexOf(due), 1);
        now = due.at;
        due.fn();
      }
      now = target;
    },
  };
}

describe("trailing throttle", () => {
  it("fires immediately when idle", () => {
    const time = fakeTime();
    const calls: number[] = [];
    const throttled = throttleTrailing((t: number) => calls.push(t), {
      intervalMs: 200,
      now: time.now,
      setTimer: time.setTimer,
      clearTimer: time.clearTimer,
    });
    throttled(0.1);
    expect(calls).toEqual([0.1]);
  });

  it("coalesces a burst into head plus trailing tail with the final value", () => {
    const time = fakeTime();
    const calls: number[] = [];
    const throttled = throttleTrailing((t: number) => calls.push(t), {
      intervalMs: 200,
      now: time.now,
      setTimer: time.setTimer,
      clearTimer: time.clearTimer,
    });
    for (let i = 0; i <= 20; i += 1) {
      throttled(i / 20);
      time.advance(10); // 21 moves over 210ms
    }
    time.advance(500);
    expect(calls[0]).toBe(0);
    expect(calls[calls.length - 1]).toBe(1); // trailing call carries the last position
    expect(calls.length).toBeLessThanOrEqual(3);
  });

  it("never fires more than once per interval", () => {
    const time = fakeTime();
    const stamps: number[] = [];
    const throttled = throttleTrailing(() => stamps.push(time.now()), {
      intervalMs: 200,
      now: time.now,
      setTimer: time.setTimer,
      clearTimer: time.clearTimer,
    });
    for (let i = 0; i < 100; i += 1) {
      throttled();
      time.advance(7);
    }
    time.advance(1000);
    for (let i = 1; i < stamps.length; i += 1) {
      expect(stamps[i] - stamps[i - 1]).toBeGreaterThanOrEqual(200);
    }
    // 100 moves over 700ms must stay within the 5/s budget (+ trailing)
    expect(stamps.length).toBeLessThanOrEqual(Math.ceil(0.7 * 5) + 1);
  });
});
