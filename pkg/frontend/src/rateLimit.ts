// Trailing-edge throttle: at most one call per interval, and the last
// suppressed call always fires once the interval elapses, so the final
// slider position is always requested. Clock and timer are injectable.

export interface ThrottleOptions {
  intervalMs?: number;
  now?: () => number;
  setTimer?: (fn: () => void, ms: number) => unknown;
  clearTimer?: (handle: unknown) => void;
}

export const MAX_REQUESTS_PER_SECOND = 5;
const DEFAULT_INTERVAL = 1000 / MAX_REQUESTS_PER_SECOND;

export function throttleTrailing<A extends unknown[]>(
  fn: (...args: A) => void,
  options: ThrottleOptions = {},
): (...args: A) => void {
  const interval = options.intervalMs ?? DEFAULT_INTERVAL;
  const now = options.now ?? (() => Date.now());
  const setTimer = options.setTimer ?? ((cb, ms) => setTimeout(cb, ms));
  const clearTimer = options.clearTimer ?? ((h) => clearTimeout(h as never));

  let lastFired = -Infinity;
  let pending: A | null = null;
  let handle: unknown = null;

  const fire = (args: A) => {
    lastFired = now();
    fn(...args);
  };

  const flush = () => {
    handle = null;
    if (pending !== null) {
      const args = pending;
      pending = null;
      fire(args);
    }
  };

  return (...args: A) => {
    const elapsed = now() - lastFired;
    if (elapsed >= interval) {
      if (handle !== null) {
        clearTimer(handle);
        handle = null;
        pending = null;
      }
      fire(args);
      return;
    }
    pending = args;
    if (handle === null) {
      handle = setTimer(flush, interval - elapsed);
    }
  };
}
