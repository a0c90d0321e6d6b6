import shutil

import pytest

from transcat.seeds import (DATA_DIR, PRIMITIVE_FILE, SMALL_FILE, TABLES_FILE, SeedDataError, read_checked,
                            small_group, small_group_orders, small_groups, primitive_degrees, primitive_groups,
                            update_checksum)


@pytest.fixture
def data_copy(tmp_path):
    d = tmp_path / "data"
    shutil.copytree(DATA_DIR, d)
    return d


def test_shipped_files_verify():
    for name in (PRIMITIVE_FILE, SMALL_FILE, TABLES_FILE):
        assert read_checked(name)


def test_tampering_is_detected(data_copy):
    p = data_copy / SMALL_FILE
    p.write_text(p.read_text() + "\n")
    with pytest.raises(SeedDataError, match="checksum"):
        read_checked(SMALL_FILE, data_copy)


def test_version_header_is_checked(data_copy):
    p = data_copy / TABLES_FILE
    p.write_text(p.read_text().replace("# version 1", "# version 2", 1))
    update_checksum(p)
    with pytest.raises(SeedDataError, match="version"):
        read_checked(TABLES_FILE, data_copy)


def test_missing_file_and_checksum(data_copy):
    with pytest.raises(SeedDataError):
        read_checked("absent.txt", data_copy)
    (data_copy / "extra.txt").write_text("# version 1\n")
    with pytest.raises(SeedDataError, match="no checksum"):
        read_checked("extra.txt", data_copy)


def test_primitive_counts_by_degree():
    assert primitive_degrees() == list(range(2, 15))
    assert [len(primitive_groups(n)) for n in range(2, 15)] == [1, 2, 2, 5, 4, 7, 7, 11, 9, 8, 6, 9, 4]
    names = [name for name, _ in primitive_groups(12)]
    assert sorted(names) == sorted(["M11(12)", "M12", "PSL(2,11)", "PGL(2,11)", "A12", "S12"])


def test_small_group_counts():
    assert small_group_orders() == list(range(1, 32))
    counts = [len(small_groups(n)) for n in range(1, 32)]
    assert counts == [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1]
    for n in (8, 12, 16):
        for sg in small_groups(n):
            assert sg.group.order == n and sg.group.is_transitive()
    with pytest.raises(SeedDataError):
        small_groups(32)
    assert small_group(8, 4).id == (8, 4)
