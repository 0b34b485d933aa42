"""Catalogue of core-free factorisation rows for the table auditor.

Each row pins a socle family at its smallest legal parameters and lists
the insoluble-composition-factor content of the two sides, together with
the primitive-prime-divisor exponent the audit must track.  Orders are
derived from the classical order formulas at load time; the row text
itself is test data, not derived truth.

Audit modes:
  table1 - the ppd prime divides the A side and avoids the B side;
  table2 - exception rows where the prime legitimately divides both;
  table3 - the prime divides at least one side; factor sets disjoint
           (one exempt row); in dimension >= 7 the prime sits inside an
           insoluble factor;
  table4 - dimension-8 plus-type rows: the prime divides every insoluble
           factor of the A side.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .groups import classical_order

__all__ = ["RowInstance", "all_rows", "row_by_id"]


@dataclass(frozen=True)
class RowInstance:
    row_id: str
    mode: str
    socle_name: str
    socle_order: int
    dim: int
    ppd: tuple  # (base prime p, exponent d*f)
    a_options: tuple
    b_options: tuple
    overgroups: tuple | None = None
    disjoint_exempt: bool = False
    conditions: str = ""

    def describe(self) -> str:
        return f"{self.socle_name}, ppd base {self.ppd[0]} exponent {self.ppd[1]}"


def _o(family, n, q):
    return classical_order(family, n, q).value


def _alt(n):
    return (f"A{n}", factorial(n) // 2)


def _psl(n, q):
    return (f"PSL{n}({q})", _o("PSL", n, q))


def _psp(n, q):
    return (f"PSp{n}({q})", _o("PSp", n, q))


def _psu(n, q):
    return (f"PSU{n}({q})", _o("PSU", n, q))


def _omega_odd(n, q):
    return (f"Omega{n}({q})", _o("Omega", n, q))


def _pomega(eps, n, q):
    return (f"POmega{n}{eps}({q})", _o(f"POmega{eps}", n, q))


def _sp(n, q):
    return (f"Sp{n}({q})", _o("Sp", n, q))


def _g2(q):
    return (f"G2({q})", _o("G2", q, q))


def _p1_order(family, n, q):
    """Order of the stabilizer of an isotropic point in the projective
    symplectic group (index = number of isotropic projective points)."""
    total = _o(family, n, q)
    return total * (q - 1) // (q**n - 1)


NONE_SIDE = ("-", ())


def _side(*entries):
    label = "{" + ",".join(name for name, _ in entries) + "}" if entries else "-"
    return (label, tuple(entries))


# ---------------------------------------------------------------------------
# table 1: symplectic socle, q odd

def _table1():
    rows = []
    # row 1 at (a, b) = (1, 2), q = 3: socle PSp4(3)
    q = 3
    rows.append(
        RowInstance(
            row_id="T1.1",
            mode="table1",
            socle_name="PSp4(3)",
            socle_order=_o("PSp", 4, 3),
            dim=4,
            ppd=(3, 4),
            a_options=(_side(_psp(2, 9)),),
            b_options=(_side(_psp(2, 3)),),
            overgroups=(2 * _o("PSp", 2, 9), _p1_order("PSp", 4, 3)),
            conditions="m = ab, b > 1; smallest (a,b,q) = (1,2,3)",
        )
    )
    rows.append(
        RowInstance(
            row_id="T1.2",
            mode="table1",
            socle_name="PSp6(3)",
            socle_order=_o("PSp", 6, 3),
            dim=6,
            ppd=(3, 6),
            a_options=(_side(_psl(2, 13)),),
            b_options=(_side(_psp(4, 3)),),
            overgroups=(_o("PSL", 2, 13), _p1_order("PSp", 6, 3)),
        )
    )
    rows.append(
        RowInstance(
            row_id="T1.3",
            mode="table1",
            socle_name="PSp6(3)",
            socle_order=_o("PSp", 6, 3),
            dim=6,
            ppd=(3, 6),
            a_options=(_side(_psl(2, 27)),),
            b_options=(_side(_alt(5)), _side()),
            overgroups=(3 * _o("PSp", 2, 27), _p1_order("PSp", 6, 3)),
        )
    )
    rows.append(
        RowInstance(
            row_id="T1.4",
            mode="table1",
            socle_name=f"PSp4({q})",
            socle_order=_o("PSp", 4, q),
            dim=4,
            ppd=(q, 4),
            a_options=(_side(_psp(2, q * q)),),
            b_options=(_side(),),
            overgroups=(2 * _o("PSp", 2, q * q), _p1_order("PSp", 4, q)),
            conditions="any odd q; default smallest q = 3",
        )
    )
    rows.append(
        RowInstance(
            row_id="T1.5",
            mode="table1",
            socle_name="PSp4(3)",
            socle_order=_o("PSp", 4, 3),
            dim=4,
            ppd=(3, 4),
            a_options=(_side(_alt(6)), _side(_alt(5)), _side()),
            b_options=(_side(),),
            overgroups=(_o("Sp", 4, 2), _p1_order("PSp", 4, 3)),
        )
    )
    return rows


def table1_row4(q: int) -> RowInstance:
    """The PSp4(q) row at an explicit odd q."""
    if q % 2 == 0 or q < 3:
        raise ValueError("q must be odd")
    return RowInstance(
        row_id=f"T1.4[q={q}]",
        mode="table1",
        socle_name=f"PSp4({q})",
        socle_order=_o("PSp", 4, q),
        dim=4,
        ppd=(q, 4),
        a_options=(_side(_psp(2, q * q)),),
        b_options=(_side(),),
        overgroups=(2 * _o("PSp", 2, q * q), _p1_order("PSp", 4, q)),
    )


# ---------------------------------------------------------------------------
# table 2: rows where the prime divides both sides

def _table2():
    rows = []
    rows.append(
        RowInstance(
            row_id="T2.1",
            mode="table2",
            socle_name="Omega7(3)",
            socle_order=_o("Omega", 7, 3),
            dim=7,
            ppd=(3, 6),
            a_options=(_side(_g2(3)),),
            b_options=(_side(("Omega6-(3).2", 2 * _o("Omega-", 6, 3))),),
        )
    )
    rows.append(
        RowInstance(
            row_id="T2.2",
            mode="table2",
            socle_name="Omega7(3)",
            socle_order=_o("Omega", 7, 3),
            dim=7,
            ppd=(3, 6),
            a_options=(_side(_g2(3)),),
            b_options=(_side(_sp(6, 2)), _side(("S9", factorial(9)))),
        )
    )
    rows.append(
        RowInstance(
            row_id="T2.3",
            mode="table2",
            socle_name="POmega4-(3)",
            socle_order=_o("POmega-", 4, 3),
            dim=4,
            ppd=(3, 4),
            a_options=(_side(_alt(5)),),
            b_options=(_side(("PSL2(5)", 60)),),
        )
    )
    rows.append(
        RowInstance(
            row_id="T2.4",
            mode="table2",
            socle_name="POmega12+(3)",
            socle_order=_o("POmega+", 12, 3),
            dim=12,
            ppd=(3, 10),
            a_options=(_side(_omega_odd(11, 3)),),
            b_options=(_side(("GU6(3).2", 2 * _o("GU", 6, 3))),),
            conditions="m/2 even; smallest m = 12, q = 3",
        )
    )
    return rows


# ---------------------------------------------------------------------------
# table 3: odd-q orthogonal socles

def _table3():
    rows = []

    def add(row_id, socle, order, dim, ppd, a_opts, b_opts, exempt=False, cond=""):
        rows.append(
            RowInstance(
                row_id=row_id,
                mode="table3",
                socle_name=socle,
                socle_order=order,
                dim=dim,
                ppd=ppd,
                a_options=a_opts,
                b_options=b_opts,
                disjoint_exempt=exempt,
                conditions=cond,
            )
        )

    add("T3.1", "Omega7(3)", _o("Omega", 7, 3), 7, (3, 6),
        (_side(_pomega("-", 6, 3)),),
        (_side(), _side(_psl(2, 27)), _side(_psp(2, 27))),
        cond="ab = m-1, m odd; smallest m = 7, q = 3, (a,b) = (2,3)")
    add("T3.2", "Omega7(3)", _o("Omega", 7, 3), 7, (3, 6),
        (_side(_g2(3)),),
        (_side(_psl(4, 3)), _side(_psu(4, 3)), _side(_psp(4, 3)), _side(_psl(2, 9))))
    add("T3.3", "Omega25(3)", _o("Omega", 25, 3), 25, (3, 24),
        (_side(_pomega("-", 24, 3)),),
        (_side(("F4(3)", _o("F4", 0, 3))),))
    add("T3.4", "Omega13(3)", _o("Omega", 13, 3), 13, (3, 12),
        (_side(_pomega("-", 12, 3)),),
        (_side(_psp(6, 3)),))
    add("T3.5", "Omega13(3)", _o("Omega", 13, 3), 13, (3, 12),
        (_side(_pomega("-", 12, 3)),),
        (_side(_psl(2, 13)),))
    add("T3.6", "Omega9(3)", _o("Omega", 9, 3), 9, (3, 8),
        (_side(_pomega("-", 8, 3)),),
        (_side(_alt(5)), _side()))
    add("T3.7", "Omega7(3)", _o("Omega", 7, 3), 7, (3, 6),
        (_side(_psu(3, 3)), _side(("2G2(3)'", 504))),
        (_side(_psl(4, 3)),),
        cond="f odd; smallest f = 1")
    add("T3.8", "Omega7(3)", _o("Omega", 7, 3), 7, (3, 6),
        (_side(_g2(3)),),
        (_side(_alt(5)), _side(_alt(6))))
    add("T3.9", "Omega7(3)", _o("Omega", 7, 3), 7, (3, 6),
        (_side(_alt(9)), _side(_sp(6, 2))),
        (_side(_psl(3, 3)), _side(_psl(4, 3)), _side(_g2(3))))
    add("T3.10", "Omega7(3)", _o("Omega", 7, 3), 7, (3, 6),
        (_side(_alt(7)), _side(_alt(8)), _side(_alt(9)),
         _side(("PSL3(4)", _o("PSL", 3, 4))), _side(_sp(6, 2))),
        (_side(_psl(3, 3)),))
    add("T3.11", "Omega7(3)", _o("Omega", 7, 3), 7, (3, 6),
        (_side(_g2(3)), _side(_sp(6, 2))),
        (_side(),))
    add("T3.12", "POmega4-(3)", _o("POmega-", 4, 3), 4, (3, 4),
        (_side(),), (_side(),))
    add("T3.13", "POmega4-(3)", _o("POmega-", 4, 3), 4, (3, 4),
        (_side(_alt(5)),), (_side(_alt(5)),), exempt=True)
    add("T3.14", "POmega6-(3)", _o("POmega-", 6, 3), 6, (3, 6),
        (_side(_psu(3, 3)),),
        (_side(_psl(2, 9)), _side(_psp(4, 3)), _side()))
    add("T3.15", "POmega6-(3)", _o("POmega-", 6, 3), 6, (3, 6),
        (_side(("PSL3(4)", _o("PSL", 3, 4))),),
        (_side(_alt(5)), _side(_psp(4, 3)), _side(_psl(2, 9)), _side()))
    add("T3.16", "POmega6-(3)", _o("POmega-", 6, 3), 6, (3, 6),
        (_side(_psl(2, 7)),),
        (_side(_alt(6)),))
    add("T3.17", "POmega6-(5)", _o("POmega-", 6, 5), 6, (5, 6),
        (_side(_alt(7)),),
        (_side(_psl(2, 25)),))
    add("T3.18", "POmega10-(3)", _o("POmega-", 10, 3), 10, (3, 10),
        (_side(_psu(10, 3)),),
        (_side(_omega_odd(9, 3)), _side(_pomega("-", 8, 3))),
        cond="m/2 odd; smallest m = 10, q = 3")
    add("T3.19", "POmega6+(3)", _o("POmega+", 6, 3), 6, (3, 4),
        (_side(_psl(2, 9)), _side(_psp(4, 3)), _side()),
        (_side(_psl(3, 3)),))
    add("T3.20", "POmega6+(3)", _o("POmega+", 6, 3), 6, (3, 4),
        (_side(_psp(4, 3)),), (_side(),))
    add("T3.21", "POmega6+(3)", _o("POmega+", 6, 3), 6, (3, 4),
        (_side(_alt(5)),), (_side(_psl(3, 3)),))
    add("T3.22", "POmega6+(3)", _o("POmega+", 6, 3), 6, (3, 4),
        (_side(_alt(6)),), (_side(),))
    add("T3.23", "POmega10+(3)", _o("POmega+", 10, 3), 10, (3, 8),
        (_side(_omega_odd(9, 3)),),
        (_side(_psl(2, 243)), _side(_psp(2, 243)), _side(_psu(5, 3)), _side()),
        cond="m = ab; smallest m = 10, q = 3, (a,b) = (2,5)")
    add("T3.24", "POmega10+(3)", _o("POmega+", 10, 3), 10, (3, 8),
        (_side(_pomega("-", 8, 3)),),
        (_side(_psl(5, 3)),))
    add("T3.25", "POmega12+(3)", _o("POmega+", 12, 3), 12, (3, 10),
        (_side(_psu(6, 3)),),
        (_side(_pomega("+", 10, 3)),),
        cond="m/2 even; smallest m = 12, q = 3")
    add("T3.26", "POmega16+(3)", _o("POmega+", 16, 3), 16, (3, 14),
        (_side(_omega_odd(15, 3)),),
        (_side(_omega_odd(9, 3)),))
    add("T3.27", "POmega12+(3)", _o("POmega+", 12, 3), 12, (3, 10),
        (_side(_omega_odd(11, 3)),),
        (_side(_psl(2, 13)),))
    return rows


# ---------------------------------------------------------------------------
# table 4: dimension-8 plus type

def _table4():
    rows = []
    L3 = _o("POmega+", 8, 3)

    def add(row_id, socle, order, ppd, a_opts, b_opts, exempt=False, cond=""):
        rows.append(
            RowInstance(
                row_id=row_id,
                mode="table4",
                socle_name=socle,
                socle_order=order,
                dim=8,
                ppd=ppd,
                a_options=a_opts,
                b_options=b_opts,
                disjoint_exempt=exempt,
                conditions=cond,
            )
        )

    add("T4.1", "POmega8+(3)", L3, (3, 6),
        (_side(_omega_odd(7, 3)),),
        (_side(_psu(4, 3)), _side(_psl(2, 9)), _side(_psl(4, 3)),
         _side(_psp(2, 3), _psp(4, 3)), _side(), _side(_psp(2, 9)), _side(_psp(4, 3))),
        cond="4 = ab, b >= 1")
    add("T4.2", "POmega8+(3)", L3, (3, 6),
        (_side(_psu(4, 3)),),
        (_side(_psl(4, 3)),))
    add("T4.3a", "POmega8+(3)", L3, (3, 6),
        (_side(_omega_odd(7, 3)),),
        (_side(_omega_odd(7, 3)),), exempt=True,
        cond="the two sides are triality twins")
    add("T4.3b", "POmega8+(9)", _o("POmega+", 8, 9), (3, 12),
        (_side(_omega_odd(7, 9)),),
        (_side(_pomega("-", 8, 3)),),
        cond="subfield side; smallest square q = 9")
    add("T4.4", "POmega8+(3)", L3, (3, 6),
        (_side(_omega_odd(7, 3)),),
        (_side(), _side(_alt(9)), _side(_psu(4, 2)), _side(_sp(6, 2)),
         _side(_alt(5)), _side(_pomega("+", 8, 2))))
    add("T4.5", "POmega8+(3)", L3, (3, 6),
        (_side(_alt(7)), _side(_alt(8)), _side(_alt(9)),
         _side(_psu(4, 3)), _side(("PSL3(4)", _o("PSL", 3, 4))), _side(_sp(6, 2))),
        (_side(_psl(4, 3)),))
    add("T4.6", "POmega8+(3)", L3, (3, 6),
        (_side(_pomega("+", 8, 2)),),
        (_side(), _side(_psl(3, 3)), _side(_psl(4, 3))))
    return rows


def all_rows() -> list[RowInstance]:
    return _table1() + _table2() + _table3() + _table4()


def row_by_id(row_id: str) -> RowInstance:
    for row in all_rows():
        if row.row_id == row_id:
            return row
    raise KeyError(row_id)
