import json

import pytest

from conftest import cls
from duval_cylinders.catalog import CatalogEntry, catalog_surface, find_entry, load_catalog, regenerate_table


def test_catalog_size_and_labels(catalog):
    assert len(catalog) == 40
    labels = [entry.label for entry in catalog]
    assert len(set(labels)) == len(labels)


def test_catalog_surfaces_rebuild(catalog):
    for entry in catalog:
        surface = entry.surface()
        assert surface.dynkin == entry.dynkin and len(surface.minus_one) == entry.lines
        if entry.expected_line_count is not None:
            assert entry.lines == entry.expected_line_count


def test_prescribed_presentations():
    assert set(catalog_surface(3, "A2+2A1").roots) == {
        cls(1, -1, -1, -1, 0, 0, 0), cls(0, 1, -1, 0, 0, 0, 0), cls(0, 0, 1, -1, 0, 0, 0), cls(0, 0, 0, 0, 1, -1, 0)
    }
    assert set(catalog_surface(4, "2A1", "8 lines").roots) == {cls(1, -1, -1, -1, 0, 0), cls(0, 0, 0, 0, 1, -1)}
    assert set(catalog_surface(3, "4A1").roots) == {
        cls(1, 0, 0, 0, -1, -1, -1), cls(1, -1, 0, -1, -1, 0, 0), cls(1, 0, -1, -1, 0, -1, 0), cls(1, -1, -1, 0, 0, 0, -1)
    }


def test_variant_lookup():
    assert find_entry(4, "2A1").variant == "9 lines"
    assert find_entry(4, "2A1", "8").variant == "8 lines"
    with pytest.raises(KeyError):
        find_entry(4, "E6")


def test_json_round_trip(tmp_path, catalog):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps([entry.to_json() for entry in catalog]))
    reloaded = load_catalog(path)
    assert reloaded == catalog
    assert [CatalogEntry.from_json(entry.to_json()) for entry in catalog] == list(catalog)


def test_table_rows_match():
    checks = regenerate_table()
    assert len(checks) == 39
    assert all(check.match for check in checks), [c.entry.label for c in checks if not c.match]
    by_label = {check.entry.label: check.computed for check in checks}
    example = by_label["3/A2+2A1"]
    assert example.n == 2 and example.rst == (2, 0, 1) and sorted(example.alpha) == [1, 2] and example.gamma == (2,)
    assert by_label["3/A5"].rst == (0, 1, 0) and by_label["3/A5"].beta == (4,)
