"""Smoke test for the mixed_moore extension module.

Build the module first, for example with `maturin develop` from crates/py, or
copy target/<profile>/libmixed_moore_py.so to mixed_moore.so on PYTHONPATH.
"""

import mixed_moore as mm


def main():
    assert mm.bipartite_mixed_moore_bound(1, 1, 3) == 8
    assert mm.bounds_table(5, 6)[(4, 6)] == [728, 284, 20]

    g = mm.fig2a()
    assert g.order == 8
    assert g.total_regularity() == (1, 1)
    assert g.diameter() == 3
    assert g.char_poly() == [0, 0, 0, 0, 0, 0, -4, 0, 1]
    assert mm.verify_spectrum_k3(g) and mm.hoffman_identity(g)

    h = g.relabel([3, 1, 4, 0, 5, 7, 2, 6])
    assert g.is_isomorphic(h) and g.canonical_form() == h.canonical_form()
    assert mm.MixedGraph.from_text(g.to_text()) == g

    digon = mm.MixedGraph(2, arcs=[(0, 1), (1, 0)])
    assert digon.edges == [(0, 1)] and digon.arcs == []
    try:
        mm.MixedGraph(2, edges=[(0, 1)], arcs=[(0, 1)])
    except ValueError:
        pass
    else:
        raise AssertionError("edge/arc conflict accepted")

    cert = mm.enumerate(1, 1, 3, 8)
    assert cert.count == 2
    assert sum(rep.is_isomorphic(g) for rep in cert.representatives) == 1
    assert mm.find_almost_moore(1, 1, 4).count >= 2
    try:
        mm.find_almost_moore(1, 2, 3)
    except mm.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget not enforced")

    assert mm.dense_family(4, 2).order == 42
    assert mm.tutte_coxeter().girth() == 8
    print("smoke test passed")


if __name__ == "__main__":
    main()
