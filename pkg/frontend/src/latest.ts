/**
 * Sequence-numbered latest-wins reconciliation for one endpoint.
 *
 * Each request takes a ticket; a response is applied only if nothing newer
 * has been applied already, so out-of-order arrivals cannot roll the UI
 * back to stale data. Also aborts the previous in-flight request so at
 * most one is outstanding per endpoint.
 */
export class LatestWins {
  private issued = 0;
  private applied = 0;
  private controller: AbortController | undefined;

  /** Start a new request: abort the previous one, get (ticket, signal). */
  begin(): { ticket: number; signal: AbortSignal } {
    this.controller?.abort();
    this.controller = new AbortController();
    this.issued += 1;
    return { ticket: this.issued, signal: this.controller.signal };
  }

  /** True if a response with this ticket should be applied. */
  accept(ticket: number): boolean {
    if (ticket <= this.applied) return false;
    this.applied = ticket;
    return true;
  }

  /** True if this ticket is still the newest issued (no later begin()). */
  isCurrent(ticket: number): boolean {
    return ticket === this.issued;
  }
}
