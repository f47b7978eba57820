import pytest

from zetabox._parallel import ordered_map, worker_count
from zetabox.errors import DomainError


def test_order_preserved_across_worker_counts(monkeypatch):
    items = list(range(50))
    monkeypatch.setenv("ZETABOX_THREADS", "1")
    a = ordered_map(lambda x: x * x, items)
    monkeypatch.setenv("ZETABOX_THREADS", "4")
    assert worker_count() == 4
    assert ordered_map(lambda x: x * x, items) == a == [x * x for x in items]


@pytest.mark.parametrize("raw", ["0", "-2", "many"])
def test_invalid_thread_counts(monkeypatch, raw):
    monkeypatch.setenv("ZETABOX_THREADS", raw)
    with pytest.raises(DomainError):
        worker_count()
