from icss.complexes import SimplicialMap, build_complex
from icss.multiplicity import Tower
from icss.verify import (
    check_D2_kernel,
    check_D_row_exact,
    check_houston,
    check_W_row_exact,
    run_all,
)


def test_w_row_exact(maps):
    for name, f in maps.items():
        for n in range(f.target.dim + 1):
            rep = check_W_row_exact(f, n)
            assert rep.passed, (name, n, rep.details)


def test_d_row_exact(maps):
    for name, f in maps.items():
        for n in range(f.target.dim + 1):
            rep = check_D_row_exact(f, n)
            assert rep.passed, (name, n, rep.details)


def test_rows_exact_on_deeper_fibres(deep_map):
    for n in range(min(deep_map.target.dim, 1) + 1):
        assert check_W_row_exact(deep_map, n).passed
        assert check_D_row_exact(deep_map, n).passed


def test_d2_kernel(maps):
    for name, f in maps.items():
        for n in range(f.target.dim + 1):
            rep = check_D2_kernel(f, n, samples=20, seed=1)
            assert rep.passed, (name, n, rep.details)


def test_houston(maps):
    for name, f in maps.items():
        tower = Tower(f)
        for k in range(1, tower.k_max() + 1):
            for n in range(f.target.dim + 1):
                rep = check_houston(f, k, n)
                assert rep.passed, (name, k, n, rep.details)


def test_run_all_passes(fold):
    reports = run_all(fold, seed=0)
    assert reports and all(r.passed for r in reports)
    names = {r.name for r in reports}
    assert any(n.startswith("W-row-exact") for n in names)
    assert any(n.startswith("collapse-first") for n in names)
    assert "cochain-round-trip" in names


def test_run_all_gates_on_validity():
    # a vertex onto an edge complex: simplicial but not surjective
    X = build_complex([(0,)])
    Y = build_complex([(0, 1)])
    f = SimplicialMap(X, Y, {0: 0})
    assert not f.valid
    reports = run_all(f)
    assert len(reports) == 1
    assert reports[0].name == "validate" and not reports[0].passed
