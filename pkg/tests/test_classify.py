import random

import pytest

from transcat.blocks import block_action, is_primitive, minimal_block_size, minimal_block_systems
from transcat.classify import (MANIFEST_NAME, Catalogue, CatalogueStore, UnsupportedPart, choose_engine,
                               classify_degree, plan_parts, read_manifest, read_tables, run_single_part)
from transcat.conjugacy import are_conjugate, conjugate_group, invariant_key
from transcat.perm import PermGroup, cyclic_group, symmetric_group


def test_small_degrees(store):
    assert len(store.get(2)) == 1
    cat = store.get(6)
    assert len(cat) == 16 and cat.minimal_count == 4
    assert [e.order for e in store.get(4)] == [4, 4, 8, 12, 24]


def test_catalogue_text_round_trip(store):
    for n in (4, 6, 8):
        text = store.get(n).text()
        back = Catalogue.parse(text)
        assert back.text() == text
        assert len(back) == len(store.get(n))


def test_catalogue_lines_follow_the_record_format(store):
    for e in store.get(8):
        f = e.line().split("\t")
        assert len(f) == 7
        assert f[0] == "8" and int(f[1]) == e.index and int(f[2]) == e.order
        assert f[3] in "PI" and f[4] in "M-"
        assert (f[5] == "-") == e.primitive


def test_parse_rejects_bad_orders(store):
    text = store.get(4).text().replace("4\t5\t24\t", "4\t5\t25\t")
    with pytest.raises(ValueError):
        Catalogue.parse(text)
    with pytest.raises(ValueError):
        Catalogue.parse("# nothing\n")


def test_identify_finds_conjugates(store):
    rng = random.Random(2)
    cat = store.get(8)
    for e in cat:
        c = tuple(rng.sample(range(8), 8))
        assert cat.identify(conjugate_group(e.group, c)) == e.index
    with pytest.raises(ValueError):
        cat.identify(cyclic_group(4))


def test_entries_are_pairwise_non_conjugate(store):
    for n in range(2, 11):
        groups = store.get(n).groups
        for i, G in enumerate(groups):
            for H in groups[i + 1:]:
                if G.order == H.order and invariant_key(G) == invariant_key(H):
                    assert are_conjugate(G, H) is None, n


def test_entries_are_consistent(store):
    for n in range(2, 11):
        prev = 0
        for e in store.get(n):
            G = e.group
            assert G.is_transitive() and G.degree == n
            assert G.order >= prev
            prev = G.order
            assert e.primitive == is_primitive(G)
            if e.signature is not None:
                assert minimal_block_size(G) == e.signature.k


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_prime_degrees_are_primitive(store, p):
    assert all(e.primitive for e in store.get(p))


def test_tops_are_transitive_quotients(store):
    for e in store.get(9):
        if e.signature is None:
            continue
        B = next(B for B in minimal_block_systems(e.group) if B.block_size == e.signature.k)
        top = block_action(e.group, B)
        assert top.is_transitive() and top.order <= e.order


def test_engine_routing():
    assert choose_engine(2, cyclic_group(3)) == "descent"
    assert choose_engine(2, symmetric_group(7), budget=10**4) == "layered"
    assert choose_engine(6, cyclic_group(2)) == "goursat"
    with pytest.raises(UnsupportedPart):
        choose_engine(5, cyclic_group(3))


def test_degree_fifteen_is_unsupported(store):
    with pytest.raises(UnsupportedPart):
        plan_parts(15, store)


def test_part_plan_covers_every_block_size(store):
    ids = [s.part_id for s in plan_parts(12, store)]
    assert ids[0] == "primitive"
    assert sum(i.startswith("2,") for i in ids) == len(store.get(6))
    assert sum(i.startswith("3,") for i in ids) == len(store.get(4))
    assert "two-block:6" in ids


def test_reruns_are_byte_identical(tmp_path):
    texts = []
    for name in ("a", "b"):
        s = CatalogueStore(tmp_path / name, seed=1)
        classify_degree(8, s)
        texts.append((tmp_path / name / "degree_08" / "catalogue.txt").read_bytes())
    assert texts[0] == texts[1]


def test_manifest_and_resume(tmp_path):
    s = CatalogueStore(tmp_path, seed=1)
    first = classify_degree(6, s).text()
    d = tmp_path / "degree_06"
    rows = read_manifest(d / MANIFEST_NAME)
    assert set(rows) == {p.part_id for p in plan_parts(6, s)}
    assert all(st == "done" for _, st, _ in rows.values())
    # a damaged part file fails its digest and is recomputed
    part = d / "parts" / "2_1.txt"
    part.write_text(part.read_text() + "# tampered\n")
    again = classify_degree(6, CatalogueStore(tmp_path, seed=1), resume=True).text()
    assert again == first
    assert "# tampered" not in part.read_text()


def test_single_part_runs(tmp_path):
    s = CatalogueStore(tmp_path, seed=1)
    res = run_single_part(6, "2,2", s)
    assert res.status == "done" and len(res.groups) > 0
    assert "2,2" in read_manifest(tmp_path / "degree_06" / MANIFEST_NAME)
    with pytest.raises(KeyError):
        run_single_part(6, "7,1", s)
    with pytest.raises(ValueError):
        run_single_part(6, "2,2", CatalogueStore(None))


def test_parallel_workers_match_serial(tmp_path):
    serial = classify_degree(8, CatalogueStore(tmp_path / "s")).text()
    parallel = classify_degree(8, CatalogueStore(tmp_path / "p", workers=2)).text()
    assert serial == parallel


def test_degree_must_be_at_least_two():
    with pytest.raises(ValueError):
        classify_degree(1, CatalogueStore(None))


def test_reference_tables_load():
    t = read_tables()
    assert t[12].g == 301 and t[10].t == 22
    assert min(t) == 2
