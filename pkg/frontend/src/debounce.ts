export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
}

/**
 * Trailing-edge debounce: calls made within `waitMs` of each other coalesce
 * into one invocation with the latest arguments. Keeps slider drags from
 * turning into a request per pixel.
 */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): Debounced<A> {
  let handle: ReturnType<typeof setTimeout> | undefined;
  let pending: A | undefined;

  const debounced = (...args: A) => {
    pending = args;
    if (handle !== undefined) clearTimeout(handle);
    handle = setTimeout(() => {
      handle = undefined;
      const args = pending as A;
      pending = undefined;
      fn(...args);
    }, waitMs);
  };

  debounced.cancel = () => {
    if (handle !== undefined) clearTimeout(handle);
    handle = undefined;
    pending = undefined;
  };

  debounced.flush = () => {
    if (handle === undefined) return;
    clearTimeout(handle);
    handle = undefined;
    const args = pending as A;
    pending = undefined;
    fn(...args);
  };

  return debounced;
}
