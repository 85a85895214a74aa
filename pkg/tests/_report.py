"""Collects one PASS/FAIL line per acceptance criterion.

A criterion may run in several parts (parametrized tests); its line reads
PASS only if every part passed.
"""
import time
from contextlib import contextmanager

TITLES: dict[int, str] = {}
PARTS: dict[int, list] = {}


def line(number: int) -> str:
    parts = PARTS[number]
    ok = all(p[0] for p in parts)
    took = sum(p[1] for p in parts)
    detail = " | ".join(p[2] for p in parts if p[2])
    return f"criterion {number} {'PASS' if ok else 'FAIL'}  {TITLES[number]} ({took:.1f}s)" + (f": {detail}" if detail else "")


@contextmanager
def criterion(number: int, title: str):
    notes: list[str] = []
    TITLES[number] = title
    start = time.perf_counter()
    try:
        yield notes
    except BaseException as e:
        notes.append(f"{type(e).__name__}: {str(e)[:160]}")
        PARTS.setdefault(number, []).append((False, time.perf_counter() - start, "; ".join(notes)))
        print(line(number))
        raise
    PARTS.setdefault(number, []).append((True, time.perf_counter() - start, "; ".join(notes)))
    print(line(number))
