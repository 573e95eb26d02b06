// Scheduling for score refreshes: edits are debounced, and the queue keeps at
// most one request in flight. Each submission gets a sequence number so a
// response can never overwrite the result of a later submission.

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, waitMs);
  };
}

export type Task<T> = () => Promise<T>;

export class RecomputeQueue<T> {
  private seq = 0;
  private applied = 0;
  private inFlight = false;
  private pending: { id: number; task: Task<T> } | null = null;
  private waiters: Array<() => void> = [];

  constructor(
    private readonly apply: (result: T) => void,
    private readonly fail: (error: unknown) => void,
  ) {}

  /** Queue a refresh. A newer submission replaces any not-yet-started one. */
  submit(task: Task<T>): void {
    this.pending = { id: ++this.seq, task };
    if (!this.inFlight) {
      void this.drain();
    }
  }

  get busy(): boolean {
    return this.inFlight || this.pending !== null;
  }

  /** Resolves once nothing is queued or in flight. */
  settled(): Promise<void> {
    if (!this.busy) return Promise.resolve();
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  private async drain(): Promise<void> {
    this.inFlight = true;
    try {
      while (this.pending) {
        const { id, task } = this.pending;
        this.pending = null;
        try {
          const result = await task();
          if (id > this.applied) {
            this.applied = id;
            this.apply(result);
          }
        } catch (error) {
          if (id > this.applied) {
            this.applied = id;
            this.fail(error);
          }
        }
      }
    } finally {
      this.inFlight = false;
      if (this.pending) {
        // a handler queued more work; keep going
        void this.drain();
      } else {
        const waiters = this.waiters;
        this.waiters = [];
        for (const resolve of waiters) resolve();
      }
    }
  }
}
