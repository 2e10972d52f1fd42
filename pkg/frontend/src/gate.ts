/* Sequence numbers for discarding stale responses.
 *
 * Each user action begins a new token in its lane; a response is applied
 * only if its token is still the latest, so a slow reply from an earlier
 * click can never overwrite the result of a later one.
 */

export class RequestGate {
  private latest: Record<string, number> = {};

  begin(lane: string): number {
    const token = (this.latest[lane] ?? 0) + 1;
    this.latest[lane] = token;
    return token;
  }

  accepts(lane: string, token: number): boolean {
    return (this.latest[lane] ?? 0) === token;
  }
}
