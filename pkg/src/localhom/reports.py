"""Canonical report serialization and third-party certificate verification.

Reports serialize to JSON with sorted keys and a fixed entry order, so two
runs of the same command produce byte-identical files. Certificates embed
every matrix behind a rank claim; verify_certificate recomputes ranks from
those matrices alone, with no access to engine objects.
"""

import json
from fractions import Fraction

from .errors import Malformed, RankMismatch
from .linalg import SparseMatrix

SCHEMA = 1


def matrix_to_json(m):
    entries = [[i, j, str(a)] for (i, j), a in sorted(m.entries.items())]
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def matrix_from_json(obj):
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = {(int(i), int(j)): Fraction(a) for i, j, a in obj["entries"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise Malformed(f"bad matrix object: {exc}") from None
    return SparseMatrix(rows, cols, entries)


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def _iter_rank_claims(obj, path=""):
    """Yield (path, claim) for every embedded matrix carrying a rank claim."""
    if isinstance(obj, dict):
        if "matrix" in obj and "rank" in obj:
            yield path, obj
        for key in sorted(obj):
            yield from _iter_rank_claims(obj[key], f"{path}/{key}")
    elif isinstance(obj, list):
        for idx, item in enumerate(obj):
            yield from _iter_rank_claims(item, f"{path}[{idx}]")


def verify_certificate(report):
    """Recompute every claimed rank in a report from its embedded matrices.

    Accepts a parsed JSON object (or a JSON string). Returns the number of
    claims checked; raises RankMismatch on the first disagreement and
    Malformed on structural problems.
    """
    if isinstance(report, (str, bytes)):
        try:
            report = json.loads(report)
        except json.JSONDecodeError as exc:
            raise Malformed(f"not valid JSON: {exc}") from None
    if not isinstance(report, dict):
        raise Malformed("report must be a JSON object")
    if report.get("schema") != SCHEMA:
        raise Malformed(f"unsupported schema {report.get('schema')!r}")
    checked = 0
    for path, claim in _iter_rank_claims(report):
        m = matrix_from_json(claim["matrix"])
        want = claim["rank"]
        if not isinstance(want, int) or want < 0:
            raise Malformed(f"bad rank claim at {path}")
        got = m.rank()
        mode = claim.get("claim", "exact")
        ok = got >= 1 if mode == "nonzero" else got == want
        if mode == "nonzero" and want != 0:
            ok = ok and got == want
        if not ok:
            raise RankMismatch(
                f"claimed rank {want} ({mode}) but recomputed {got} at {path}",
                claim={"path": path, "claimed": want, "recomputed": got},
            )
        checked += 1
    if checked == 0:
        raise Malformed("report embeds no rank claims")
    return checked
