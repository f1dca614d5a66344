"""Hand-derived multiplication table of the basis blades.

Row times column; each entry is a signed blade name.  The table is written
out independently of :mod:`rsphoton.algebra` so that the generated product
table can be checked against it.
"""

AUDITED_TABLE = """
       1      e1     e2     e3     e23    e31    e12    e123
1      1      e1     e2     e3     e23    e31    e12    e123
e1     e1     1      e12    -e31   e123   -e3    e2     e23
e2     e2     -e12   1      e23    e3     e123   -e1    e31
e3     e3     e31    -e23   1      -e2    e1     e123   e12
e23    e23    e123   -e3    e2     -1     -e12   e31    -e1
e31    e31    e3     e123   -e1    e12    -1     -e23   -e2
e12    e12    -e2    e1     e123   -e31   e23    -1     -e3
e123   e123   e23    e31    e12    -e1    -e2    -e3    -1
"""


def parse_table(text: str = AUDITED_TABLE) -> dict:
    """Map ``(row, col)`` blade names to ``(sign, blade)``."""
    lines = [ln.split() for ln in text.strip().splitlines()]
    cols = lines[0]
    out = {}
    for row in lines[1:]:
        name, entries = row[0], row[1:]
        for col, entry in zip(cols, entries):
            sign = -1 if entry.startswith("-") else 1
            out[(name, col)] = (sign, entry.lstrip("-"))
    return out
