import threading

import pytest

from krull.errors import Budget, BudgetExceeded, InputError
from krull.groebner import IdealRep
from krull.poly import Ring


def test_env_budget_override(monkeypatch):
    monkeypatch.setenv("HEITMANN_BUDGET", "123,45")
    b = Budget()
    assert b.spairs_left == 123 and b.max_degree == 45
    monkeypatch.setenv("HEITMANN_BUDGET", "77")
    b = Budget()
    assert b.spairs_left == 77 and b.max_degree == 60


def test_env_budget_rejects_garbage(monkeypatch):
    monkeypatch.setenv("HEITMANN_BUDGET", "lots")
    with pytest.raises(InputError):
        Budget()


def test_env_budget_can_starve_computation(monkeypatch):
    monkeypatch.setenv("HEITMANN_BUDGET", "1,60")
    R = Ring(0, ["x", "y", "z"])
    I = IdealRep(R, [R.parse(t) for t in
                     ("x^2 + y*z", "y^3 - z*x", "z^2*y - x")])
    with pytest.raises(BudgetExceeded):
        I.groebner()


def test_groebner_cache_is_single_flight():
    R = Ring(0, ["x", "y"])
    I = IdealRep(R, [R.parse("x^3 - 2*x*y"), R.parse("x^2*y - 2*y^2 + x")])
    results = []

    def worker():
        results.append(I.groebner())

    threads = [threading.Thread(target=worker) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)
