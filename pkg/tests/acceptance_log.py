"""Shared store for acceptance results, printed at the end of the session."""

RESULTS: dict[int, tuple[bool, str]] = {}


def line(n: int) -> str:
    ok, detail = RESULTS[n]
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
