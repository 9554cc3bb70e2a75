"""
Root-existence verdicts for the cyclic branched covers of C(2n+1, 2m, 2).

For x = 2cos(pi/r), a real root y > 2 of R_{n,m}(x, y) gives a nonabelian
representation that conjugates into SL_2(R) and sends the r-th power of a
meridian to -I, which makes the r-th cyclic branched cover left orderable.
This module only certifies the root; the topology is not modelled.
"""

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .riley_closed import as_params
from .root_finder import ScanConfig, UpperBoundError, scan_roots

CERTIFIED = "certified"
NOT_FOUND = "not_found"
BELOW_THRESHOLD = "below_threshold"


def thm_lower_bound(p):
    """
    Smallest r from which the theorem table claims a root y > 2, or None
    when no clause covers (n, m).
    """
    p = as_params(p)
    n, m = p.n, p.m
    if n >= 3 or n <= -4:
        return 3
    if n in (2, -3):
        return 4
    if n == 1:
        if m in (1, 2):
            return 5
        if m >= 3:
            return 6
        if m <= -4:
            return 7
        if m in (-2, -3):
            return 8
        return 9  # m == -1
    if n == -2:
        if m == -1:
            return 5
        if m <= -2:
            return 6
        if m >= 6:
            return 7
    return None


@dataclass
class OrderabilityVerdict:
    n: int
    m: int
    r: int
    r_min_claimed: int | None
    status: str
    certificate: object = None
    error: str | None = None

    @property
    def claimed(self):
        return self.r_min_claimed is not None and self.r >= self.r_min_claimed

    @property
    def mismatch(self):
        return self.claimed and self.status != CERTIFIED

    def to_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "r_min_claimed": self.r_min_claimed,
            "status": self.status,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "error": self.error,
        }


def certify(p, r, cfg=None):
    """
    Verdict for one (n, m, r). A root found below the table bound is still
    reported as certified; below_threshold marks r < r_min_claimed with no
    root found.
    """
    p = as_params(p)
    if r < 2:
        raise ValueError("r must be >= 2")
    bound = thm_lower_bound(p)
    error = None
    try:
        certs = scan_roots(p, r, cfg, limit=1)
    except UpperBoundError as exc:
        certs, error = [], str(exc)
    if certs:
        status = CERTIFIED
    elif bound is not None and r < bound:
        status = BELOW_THRESHOLD
    else:
        status = NOT_FOUND
    return OrderabilityVerdict(p.n, p.m, r, bound, status, certs[0] if certs else None, error)


def _certify_task(args):
    n, m, r, cfg = args
    return certify((n, m), r, cfg)


def certify_many(triples, cfg=None, workers=None):
    """Certify (n, m, r) triples, optionally in worker processes; sorted output."""
    cfg = cfg or ScanConfig()
    tasks = [(n, m, r, cfg) for n, m, r in triples]
    for n, m, _, _ in tasks:
        as_params((n, m))
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_certify_task, tasks, chunksize=8))
    else:
        out = [_certify_task(t) for t in tasks]
    return sorted(out, key=lambda v: (v.n, v.m, v.r))


def sweep(n_range, m_range, r_range, cfg=None, workers=None):
    """Verdicts over the full (n, m, r) grid, ordered by n, then m, then r."""
    n_range, m_range, r_range = list(n_range), list(m_range), list(r_range)
    if 0 in n_range or 0 in m_range:
        raise ValueError("n and m ranges must exclude 0")
    triples = [(n, m, r) for n in n_range for m in m_range for r in r_range]
    return certify_many(triples, cfg, workers)


def theorem_triples(n_max=8, m_max=8, extra=6):
    """(n, m, r) for every clause-covered pair and r in [bound, bound + extra]."""
    out = []
    for n in range(-n_max, n_max + 1):
        for m in range(-m_max, m_max + 1):
            if n == 0 or m == 0:
                continue
            bound = thm_lower_bound((n, m))
            if bound is not None:
                out.extend((n, m, r) for r in range(bound, bound + extra + 1))
    return out


def summarize(verdicts):
    counts = {CERTIFIED: 0, NOT_FOUND: 0, BELOW_THRESHOLD: 0}
    for v in verdicts:
        counts[v.status] += 1
    counts["total"] = len(verdicts)
    counts["claimed"] = sum(v.claimed for v in verdicts)
    counts["mismatches"] = sum(v.mismatch for v in verdicts)
    counts["errors"] = sum(v.error is not None for v in verdicts)
    return counts


def monotonicity_report(verdicts):
    """
    (n, m, r) where r is certified but r + 1 was tested and is not, for
    |n| >= 3. Reported, not asserted.
    """
    by_key = {(v.n, v.m, v.r): v for v in verdicts}
    gaps = []
    for (n, m, r), v in sorted(by_key.items()):
        nxt = by_key.get((n, m, r + 1))
        if abs(n) >= 3 and v.status == CERTIFIED and nxt is not None and nxt.status != CERTIFIED:
            gaps.append((n, m, r))
    return gaps


CSV_FIELDS = ["n", "m", "r", "status", "r_min_claimed", "y_star", "residual"]


def verdicts_to_json(verdicts):
    return json.dumps([v.to_dict() for v in verdicts], indent=2)


def verdicts_to_csv(verdicts):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for v in verdicts:
        c = v.certificate
        writer.writerow([
            v.n,
            v.m,
            v.r,
            v.status,
            "" if v.r_min_claimed is None else v.r_min_claimed,
            "" if c is None else f"{c.y_star:.17g}",
            "" if c is None else f"{c.residual:.17g}",
        ])
    return buf.getvalue()
