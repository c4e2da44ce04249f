"""Range verification of the solvability statements, with reduction rules.

For each m in a range, the appropriate reduction is applied (dividing out
64, 4 or 16 while possible), the restricted system is solved for every
coefficient quadruple the statement covers, and every certificate is
re-validated independently.  Work is chunked, optionally parallel, and
checkpointable; reports are deterministic and byte-identical across worker
counts and chunk sizes.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import mpmath

from .arith import is_three_square
from .solver import (
    NINE_QUADRUPLES,
    NoSolutionError,
    RestrictedSolution,
    SystemQuadruple,
    TargetSet,
    check_solution,
    solve_linear_system,
    solve_restricted,
)


class _TheoremSpec(NamedTuple):
    target_set: TargetSet
    quads: tuple[SystemQuadruple, ...]
    divisor: int   # reduce by this factor while divisible
    scale: int     # coordinate scale undoing one reduction step


_FIVE_QUADRUPLES = (
    SystemQuadruple(1, 3, 3, 0),
    SystemQuadruple(1, 2, 4, 0),
    SystemQuadruple(1, 1, 2, 4),
    SystemQuadruple(1, 1, 2, 5),
    SystemQuadruple(1, 2, 3, 5),
)

_FOUR_QUADRUPLES = (
    SystemQuadruple(1, 1, 2, 2),
    SystemQuadruple(1, 2, 2, 2),
    SystemQuadruple(2, 2, 3, 0),
    SystemQuadruple(2, 3, 4, 0),
)

_THEOREMS = {
    "1.1": _TheoremSpec(TargetSet.CUBES, NINE_QUADRUPLES, 64, 8),
    "1.2": _TheoremSpec(TargetSet.POW2, _FIVE_QUADRUPLES, 4, 2),
    "1.3": _TheoremSpec(TargetSet.SQUARES, _FOUR_QUADRUPLES, 16, 4),
}

# Window verification: quadruple, window multipliers [lo*m, hi*m] for the
# fourth power of the square root of the linear-form value.
_T14 = {
    "1.4a": (SystemQuadruple(1, 2, 3, 5), 38, 39),
    "1.4b": (SystemQuadruple(2, 3, 4, 0), 28, 29),
}

THEOREM_IDS = ("1.1", "1.2", "1.3", "1.4a", "1.4b")


def _canon_theorem(theorem: str) -> str:
    name = theorem.strip()
    if name.startswith("T"):
        name = name[1:].replace("_", ".")
    if name not in THEOREM_IDS:
        raise ValueError(f"unsupported theorem id {theorem!r} (expected one of "
                         f"{', '.join(THEOREM_IDS)})")
    return name


def reduce_m(m: int, theorem: str) -> int:
    """Divide out the theorem's scaling factor (64, 4 or 16) while possible.

    The windowed statements (1.4a/1.4b) have no reduction and return m
    unchanged.
    """
    th = _canon_theorem(theorem)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if th in _T14 or m == 0:
        return m
    d = _THEOREMS[th].divisor
    while m % d == 0:
        m //= d
    return m


def _reduce_full(m: int, theorem: str) -> tuple[int, int]:
    """(reduced m, coordinate scale restoring the original m)."""
    if m == 0:
        return 0, 1
    spec = _THEOREMS[theorem]
    f = 1
    while m % spec.divisor == 0:
        m //= spec.divisor
        f *= spec.scale
    return m, f


def _iroot4(n: int) -> int:
    """Integer fourth root by binary search: largest r with r**4 <= n."""
    if n < 0:
        raise ValueError("fourth root of negative value")
    if n == 0:
        return 0
    hi = 1
    while hi ** 4 <= n:
        hi <<= 1
    lo = hi >> 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if mid ** 4 <= n:
            lo = mid
        else:
            hi = mid
    return lo


def _verify_windowed(m: int, theorem: str) -> tuple[bool, str]:
    """Natural solution with a square value n**2 in the fourth-root window."""
    quad, lo_mult, hi_mult = _T14[theorem]
    lo4 = lo_mult * m
    hi4 = hi_mult * m
    r = _iroot4(lo4)
    nlo = r if r ** 4 == lo4 else r + 1
    nhi = _iroot4(hi4)
    tried = []
    for nn in range(nlo, nhi + 1):
        rem = hi4 - nn ** 4
        if theorem == "1.4a":
            if nn % 3 == 0:
                continue
        elif rem % 3 == 1:
            continue
        if not is_three_square(rem):
            continue
        tried.append(nn)
        sol = solve_linear_system(m, nn * nn, quad, natural=True)
        if sol is not None:
            if not check_solution(m, quad, TargetSet.SQUARES, sol):
                return False, f"certificate failed revalidation: {tuple(sol)}"
            return True, ""
    return False, (f"no natural solution with square value in window "
                   f"n in [{nlo},{nhi}], tried n={tried}")


def _verify_one(m: int, theorem: str,
                quads: Optional[tuple] = None) -> tuple[str, list[dict]]:
    """Outcome code for one m: V (verified), R (reduced/skipped), F (failed)."""
    if theorem in _T14:
        if m % 16 == 0:
            return "R", []
        ok, trace = _verify_windowed(m, theorem)
        if ok:
            return "V", []
        quad = _T14[theorem][0]
        return "F", [{"m": m, "quad": list(quad), "trace": trace}]
    spec = _THEOREMS[theorem]
    quad_list = spec.quads if quads is None else quads
    m2, f = _reduce_full(m, theorem)
    fails = []
    for quad in quad_list:
        try:
            sol = solve_restricted(m2, quad, spec.target_set)
        except NoSolutionError as exc:
            fails.append({"m": m, "quad": list(quad), "trace": str(exc)})
            continue
        scaled = RestrictedSolution(sol.x * f, sol.y * f, sol.z * f,
                                    sol.t * f, sol.n * f)
        if not check_solution(m, quad, spec.target_set, scaled):
            fails.append({"m": m, "quad": list(quad),
                          "trace": f"certificate failed revalidation: "
                                   f"{tuple(scaled)}"})
    if fails:
        return "F", fails
    return ("R" if m2 != m else "V"), []


def _run_chunk(theorem: str, start: int, end: int,
               quads: Optional[tuple], cap: int) -> dict:
    codes = []
    failures: list[dict] = []
    for m in range(start, end):
        code, fails = _verify_one(m, theorem, quads)
        codes.append(code)
        if len(failures) < cap:
            failures.extend(fails[: cap - len(failures)])
    return {
        "verified": codes.count("V"),
        "reduced": codes.count("R"),
        "failed": codes.count("F"),
        "codes": "".join(codes),
        "failures": failures,
    }


@dataclass(frozen=True)
class VerificationJob:
    """A verification range: theorem id, m in [lo, hi), chunking, checkpoint."""

    theorem: str
    lo: int
    hi: int
    chunk: int = 1024
    quads: Optional[tuple[SystemQuadruple, ...]] = None
    checkpoint: Optional[str] = None
    failure_cap: int = 100

    def __post_init__(self) -> None:
        object.__setattr__(self, "theorem", _canon_theorem(self.theorem))
        if self.lo > self.hi:
            raise ValueError("lo must not exceed hi")
        if self.lo < 0:
            raise ValueError("range must be nonnegative")
        if self.chunk < 1:
            raise ValueError("chunk size must be >= 1")
        if self.quads is not None:
            if self.theorem in _T14:
                raise ValueError("quad filter is not available for windowed "
                                 "verification")
            allowed = set(_THEOREMS[self.theorem].quads)
            norm = tuple(SystemQuadruple(*q) for q in self.quads)
            for q in norm:
                if q not in allowed:
                    raise ValueError(f"quadruple {tuple(q)} is not in the "
                                     f"theorem {self.theorem} list")
            object.__setattr__(self, "quads", norm)


class _SimulatedInterrupt(RuntimeError):
    """Internal: raised by the test-only stop hook after N chunk completions."""


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _job_key(job: VerificationJob) -> dict:
    quads = None if job.quads is None else [list(q) for q in job.quads]
    return {"theorem": job.theorem, "lo": job.lo, "hi": job.hi,
            "chunk": job.chunk, "quads": quads}


def _save_checkpoint(path: str, job: VerificationJob,
                     done: dict[int, dict]) -> None:
    prefix = 0
    while prefix in done:
        prefix += 1
    payload = dict(_job_key(job))
    payload["prefix"] = prefix
    payload["chunks"] = {str(i): done[i] for i in sorted(done)}
    payload["sha256"] = _digest({k: v for k, v in payload.items()})
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ckpt-", dir=directory)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_checkpoint(path: str, job: VerificationJob) -> dict[int, dict]:
    if not os.path.exists(path):
        return {}
    with open(path) as fh:
        data = json.load(fh)
    digest = data.pop("sha256", None)
    if digest != _digest(data):
        raise ValueError(f"checkpoint {path} failed its integrity check")
    key = _job_key(job)
    if {k: data.get(k) for k in key} != key:
        raise ValueError(f"checkpoint {path} does not match this job")
    return {int(i): rec for i, rec in data["chunks"].items()}


def verify_theorem(job: VerificationJob, workers: Optional[int] = None,
                   include_codes: bool = False,
                   _stop_after_chunks: Optional[int] = None) -> dict:
    """Run the job and return the report dict.

    Report: {theorem, range: [lo, hi], verified, reduced, failed,
    failures: [{m, quad, trace}], wall_ms, per_sec}; everything except the
    two timing fields is deterministic.  workers defaults to FOURSQ_THREADS
    or the CPU count; include_codes adds a per-m outcome string (V/R/F) used
    for CSV output.
    """
    t0 = time.monotonic()
    nchunks = (job.hi - job.lo + job.chunk - 1) // job.chunk
    done: dict[int, dict] = {}
    if job.checkpoint:
        done = _load_checkpoint(job.checkpoint, job)
    pending = [i for i in range(nchunks) if i not in done]
    if workers is None:
        workers = int(os.environ.get("FOURSQ_THREADS", "0")) or os.cpu_count() or 1
    completed = 0

    def bounds(i: int) -> tuple[int, int]:
        start = job.lo + i * job.chunk
        return start, min(job.hi, start + job.chunk)

    def record(i: int, rec: dict) -> None:
        nonlocal completed
        done[i] = rec
        if job.checkpoint:
            _save_checkpoint(job.checkpoint, job, done)
        completed += 1
        if _stop_after_chunks is not None and completed >= _stop_after_chunks:
            raise _SimulatedInterrupt(f"stopped after {completed} chunks")

    if workers <= 1 or len(pending) <= 1:
        for i in pending:
            start, end = bounds(i)
            record(i, _run_chunk(job.theorem, start, end, job.quads,
                                 job.failure_cap))
    else:
        executor = ProcessPoolExecutor(max_workers=workers)
        try:
            futures = {}
            for i in pending:
                start, end = bounds(i)
                futures[executor.submit(_run_chunk, job.theorem, start, end,
                                        job.quads, job.failure_cap)] = i
            for fut in as_completed(futures):
                record(futures[fut], fut.result())
        finally:
            executor.shutdown(wait=True, cancel_futures=True)

    verified = reduced = failed = 0
    failures: list[dict] = []
    codes: list[str] = []
    for i in range(nchunks):
        rec = done[i]
        verified += rec["verified"]
        reduced += rec["reduced"]
        failed += rec["failed"]
        if len(failures) < job.failure_cap:
            failures.extend(rec["failures"][: job.failure_cap - len(failures)])
        codes.append(rec["codes"])
    wall = max(time.monotonic() - t0, 1e-9)
    report = {
        "theorem": job.theorem,
        "range": [job.lo, job.hi],
        "verified": verified,
        "reduced": reduced,
        "failed": failed,
        "failures": failures,
        "wall_ms": round(wall * 1000.0, 3),
        "per_sec": round((job.hi - job.lo) / wall, 3),
    }
    if include_codes:
        report["codes"] = "".join(codes)
    return report


def canonical_report_bytes(report: dict) -> bytes:
    """Deterministic byte encoding of a report, timing fields excluded."""
    data = {k: v for k, v in report.items()
            if k not in ("wall_ms", "per_sec", "codes")}
    return json.dumps(data, sort_keys=True, separators=(",", ":")).encode()


# --------------------------------------------------------------------------
# Window-bound constants
# --------------------------------------------------------------------------

# For m at least (need / (hi^(1/4) - lo^(1/4)))**4 the window
# [(lo*m)^(1/4), (hi*m)^(1/4)] has length >= need, so it contains an
# integer of every residue class mod need.  The exact constants are
# 3,739,366,402.9... for the 38/39 window (need 4) and 7,678,255,699.8...
# for the 28/29 window (need 6); the thresholds below are those constants
# rounded up to three significant digits.
WINDOW_BOUNDS = {
    "1.4a": 3_740_000_000,
    "1.4b": 7_680_000_000,
}

_WINDOW_PARAMS = {
    # theorem -> (hi multiplier, lo multiplier, needed window length)
    "1.4a": (39, 38, 4),
    "1.4b": (29, 28, 6),
}


def _iv_root4(x):
    return mpmath.iv.sqrt(mpmath.iv.sqrt(x))


def window_length_ok(m: int, theorem: str) -> bool:
    """Certified check that the fourth-root window at m is long enough.

    For 1.4a the window [(38m)^(1/4), (39m)^(1/4)] must have length >= 4;
    for 1.4b the 28/29 window must have length >= 6.  Uses interval
    arithmetic, so True is a guarantee; the window grows monotonically with
    m, so True at m implies True for everything above m.
    """
    th = _canon_theorem(theorem)
    if th not in _T14:
        raise ValueError(f"theorem {theorem!r} has no window")
    hi_mult, lo_mult, need = _WINDOW_PARAMS[th]
    saved = mpmath.iv.prec
    mpmath.iv.prec = 200
    try:
        w = _iv_root4(mpmath.iv.mpf(hi_mult * m)) - \
            _iv_root4(mpmath.iv.mpf(lo_mult * m))
        return bool(w.a >= need)
    finally:
        mpmath.iv.prec = saved


def window_constants() -> dict:
    """Certified facts about the two window thresholds.

    For each windowed statement: a rigorous upper bound on the governing
    constant (need/(hi^(1/4)-lo^(1/4)))**4, the threshold the package
    certifies, and whether constant < threshold and the window is long
    enough at the threshold.
    """
    out = {}
    saved = mpmath.iv.prec
    mpmath.iv.prec = 200
    try:
        for th, (hi_mult, lo_mult, need) in _WINDOW_PARAMS.items():
            gap = _iv_root4(mpmath.iv.mpf(hi_mult)) - \
                _iv_root4(mpmath.iv.mpf(lo_mult))
            const = (mpmath.iv.mpf(need) / gap) ** 4
            bound = WINDOW_BOUNDS[th]
            out[th] = {
                "constant_upper": float(const.b),
                "threshold": bound,
                "constant_below_threshold": bool(const.b < mpmath.mpf(bound)),
            }
    finally:
        mpmath.iv.prec = saved
    for th in _WINDOW_PARAMS:
        out[th]["window_ok_at_threshold"] = window_length_ok(
            WINDOW_BOUNDS[th], th)
    return out


def check_bounds() -> bool:
    """Certify both window thresholds with interval arithmetic.

    Confirms (4/(39^(1/4)-38^(1/4)))**4 < 3.74e9 and
    (6/(29^(1/4)-28^(1/4)))**4 < 7.68e9, and that at each threshold the
    corresponding fourth-root window already has the required length (4,
    resp. 6), which guarantees it contains an integer of the needed parity
    and residue class for every m above the threshold.
    """
    facts = window_constants()
    return all(
        f["constant_below_threshold"] and f["window_ok_at_threshold"]
        for f in facts.values()
    )
