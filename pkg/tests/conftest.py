import random
from pathlib import Path

import pytest

from toricsegre.fan import Fan, load_fan

DATA = Path(__file__).resolve().parent.parent / "data"

# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        items = ACCEPTANCE[k]
        ok = all(v for v, _ in items)
        failed = [d for v, d in items if not v]
        detail = "; ".join(failed) if failed else "; ".join(d for _, d in items[:3])
        tr.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


def hirzebruch(a: int) -> Fan:
    return Fan(
        [(1, 0), (0, 1), (-1, a), (0, -1)],
        [(0, 1), (1, 2), (2, 3), (3, 0)],
        label=f"F{a}",
    )


@pytest.fixture(scope="session")
def fano() -> Fan:
    return load_fan(DATA / "fano4_7.json")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


def corpus_fans() -> dict[str, Fan]:
    fans = {f"P{n}": load_fan(f"P{n}") for n in range(1, 6)}
    for s in ("P1xP1", "P2xP1", "P1xP1xP1", "P4xP2", "P2xP2"):
        fans[s] = load_fan(s)
    fans["fano4_7"] = load_fan(DATA / "fano4_7.json")
    fans["F1"] = hirzebruch(1)
    fans["F2"] = hirzebruch(2)
    return fans
