"""Egg-box diagrams as Graphviz DOT.

One cluster per D-class; inside it an HTML table whose rows are R-classes and
columns are L-classes. A cell shows one representative of its H-class, the
H-class size, and a star if the cell holds an idempotent.
"""

from __future__ import annotations

from .engine import SemigroupInstance, greens_oracle


def _fmt(a) -> str:
    return "".join(map(str, a)) if len(a) <= 10 else ",".join(map(str, a))


def eggbox_dot(S: SemigroupInstance, title: str = "eggbox") -> str:
    D = greens_oracle(S, "D")
    L = greens_oracle(S, "L").labels
    R = greens_oracle(S, "R").labels
    T = S.table
    lines = [f'digraph "{title}" {{', "  node [shape=plaintext];"]
    for d, members in enumerate(D.classes):
        rows = sorted({R[i] for i in members})
        cols = sorted({L[i] for i in members})
        cells: dict[tuple[int, int], list[int]] = {}
        for i in members:
            cells.setdefault((R[i], L[i]), []).append(i)
        rank = len(set(S.elements[members[0]]))
        lines.append(f"  subgraph cluster_D{d} {{")
        lines.append(f'    label="D{d}: rank {rank}, {len(members)} elements";')
        table = ['<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">']
        for r in rows:
            table.append("<TR>")
            for c in cols:
                h = cells.get((r, c), [])
                if not h:
                    table.append("<TD> </TD>")
                    continue
                star = "*" if any(T[i, i] == i for i in h) else ""
                size = f" ({len(h)})" if len(h) > 1 else ""
                table.append(f"<TD>{_fmt(S.elements[h[0]])}{size}{star}</TD>")
            table.append("</TR>")
        table.append("</TABLE>")
        lines.append(f"    d{d} [label=<{''.join(table)}>];")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
