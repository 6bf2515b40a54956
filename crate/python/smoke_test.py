"""Smoke test for the Python bindings: python python/smoke_test.py"""

import torsion_sieve_py as ts


def main() -> None:
    e = ts.torsion_group_exists(1, 25, 3, 4)
    assert e["exists"] and e["certification"] == "BruteForce", e
    cells = ts.reduction_report(1, 25, 3)
    assert [c["nonempty"] for c in cells] == [False, False, False, True]

    f = ts.SmallField(11, 1)
    pts = f.moduli_points(1, 5)
    assert pts and all(p.level == (1, 5) for p in pts)
    t = pts[0].hecke(3)
    assert t["degree"] == 4 and t["galois_stable"] and t["effective"], t
    assert pts[0].diamond(2) in set(pts)

    assert sum(o["size"] for o in ts.cusp_inventory(1, 13)) == ts.closed_form_cusp_count(13) == 12
    assert ts.cc_condition(1, 28, 5, [1, 2]) == (4, [1])

    rows = ts.gonality_table(2)
    assert [r["b_ceil"] for r in rows] == [5, 5, 6, 10, 13, 21, 22, 35, 59]
    assert ts.class_number(23) == 3
    assert ts.sporadic_x0(2, 10_000)["kind"] == "explicit"

    assert all(c["holds"] for c in ts.verify_identities())
    assert ts.jain_parameters("2", "3") == ("-3", "10/3")
    assert all(r["pass"] for r in ts.rank_check())

    try:
        ts.torsion_group_exists(2, 3, 5, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("m must divide n")
    print("smoke test passed")


if __name__ == "__main__":
    main()
