from __future__ import annotations

from monoidpure import AffineMonoid

E = AffineMonoid([(2, 0), (1, 1), (0, 1)], name="E")
G = AffineMonoid([(2, 1), (1, 2)], name="G")
V22 = AffineMonoid([(2, 0), (1, 1), (0, 2)], name="V(2,2)")
V32 = AffineMonoid(
    [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)], name="V(3,2)"
)
D23 = AffineMonoid([(2, 0), (0, 3)], name="D(2,3)")
D123 = AffineMonoid([(1, 0, 0), (0, 2, 0), (0, 0, 3)], name="D(1,2,3)")
D2 = AffineMonoid([(2,)], name="D(2)")
Z1 = AffineMonoid([(1,)], name="Z1")
Z2 = AffineMonoid([(1, 0), (0, 1)], name="Z2")
Z3 = AffineMonoid([(1, 0, 0), (0, 1, 0), (0, 0, 1)], name="Z3")
N = AffineMonoid([(1, 0), (0, 2), (0, 3)], name="N")

CORPUS = [E, G, V22, V32, D23, D123, D2, Z1, Z2, Z3, N]
NORMAL = [G, V22, V32, D23, D123, D2, Z1, Z2, Z3]
FREE = [D23, D123, D2, Z1, Z2, Z3]

# acceptance lines collected while the suite runs
ACCEPTANCE: dict[object, list[tuple[str, bool]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE, key=lambda k: (isinstance(k, str), str(k).zfill(3))):
        parts = ACCEPTANCE[number]
        ok = all(p for _, p in parts)
        failed = [name for name, p in parts if not p]
        label = f"criterion {number:2d}" if isinstance(number, int) else number
        line = f"{label}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  (failed: " + "; ".join(failed) + ")"
        terminalreporter.write_line(line)
