import math
import pathlib

import pytest

import blockmem as bm

C = bm.Chunk
TRACES = pathlib.Path(__file__).resolve().parents[2] / "traces"


def test_store_then_load_roundtrip():
    m = bm.empty()
    b, m = bm.alloc(m, 0, 16)
    m = bm.store(C.int32, m, b, 4, 7)
    assert bm.load(C.int32, m, b, 4) == 7
    assert bm.load(C.int32, m, b, 8) == bm.undef
    # same size, different chunk: converted
    assert bm.load(C.float32, m, b, 4) == bm.undef


def test_small_chunks_convert():
    m = bm.empty()
    b, m = bm.alloc(m, 0, 8)
    m = bm.store(C.int8u, m, b, 0, 255)
    assert bm.load(C.int8s, m, b, 0) == -1
    assert bm.load(C.int8u, m, b, 0) == 255
    assert bm.convert(65535, C.int16s) == -1


def test_overlapping_read_is_undef():
    m = bm.empty()
    b, m = bm.alloc(m, 0, 8)
    m = bm.store(C.int32, m, b, 0, 1)
    assert bm.load(C.int8s, m, b, 1) == bm.undef
    m = bm.store(C.int8s, m, b, 2, 3)
    assert bm.load(C.int32, m, b, 0) == bm.undef


def test_failures_return_none():
    m = bm.empty()
    b, m = bm.alloc(m, 0, 8)
    assert bm.load(C.int32, m, b, 6) is None          # out of bounds
    assert bm.load(C.int32, m, b, 2) is None          # misaligned
    assert bm.store(C.int32, m, b + 1, 0, 1) is None  # unallocated block
    m2 = bm.free(m, b)
    assert m2 is not None
    assert bm.free(m2, b) is None
    assert bm.load(C.int8s, m2, b, 0) is None


def test_alignment_can_be_disabled():
    m = bm.empty(bm.MemConfig(check_alignment=False))
    b, m = bm.alloc(m, 0, 8)
    assert bm.load(C.int32, m, b, 2) == bm.undef


def test_capacity_limits_alloc():
    m = bm.empty(bm.MemConfig(capacity=16))
    _, m = bm.alloc(m, 0, 16)
    assert bm.alloc(m, 0, 1) is None


def test_fresh_ids_and_bounds():
    m = bm.empty()
    b1, m = bm.alloc(m, -4, 4)
    b2, m = bm.alloc(m, 0, 1)
    assert b1 != b2
    assert bm.bounds(m, b1) == (-4, 4)
    m = bm.free(m, b1)
    b3, m = bm.alloc(m, 0, 1)
    assert b3 not in (b1, b2)
    assert not bm.valid_block(m, b1)
    assert bm.fresh_block(m, b3 + 1)


def test_pointers_and_floats():
    m = bm.empty()
    b, m = bm.alloc(m, 0, 16)
    p = bm.Ptr(b, 4)
    m = bm.store(C.int32, m, b, 0, p)
    assert bm.load(C.int32, m, b, 0) == p
    m = bm.store(C.float64, m, b, 8, 1.5)
    assert bm.load(C.float64, m, b, 8) == 1.5
    m = bm.store(C.float32, m, b, 0, 0.1)
    assert math.isclose(bm.load(C.float32, m, b, 0), 0.1, rel_tol=1e-7)


def test_relations():
    m1 = bm.empty()
    b, m1 = bm.alloc(m1, 0, 8)
    m1 = bm.store(C.int32, m1, b, 0, bm.undef)
    m2 = bm.store(C.int32, m1, b, 0, 5)
    assert bm.mem_lessdef(m1, m2)
    assert not bm.mem_lessdef(m2, m1)
    assert bm.mem_extends(m1, m2)

    t = bm.empty()
    f, t = bm.alloc(t, 0, 32)
    t = bm.store(C.int32, t, f, 8, 5)
    assert bm.mem_inject({b: (f, 8)}, m2, t)
    assert not bm.mem_inject({b: (f, 12)}, m2, t)
    assert bm.val_emb({1: (2, 8)}, bm.Ptr(1, 0), bm.Ptr(2, 8))
    assert bm.val_lessdef(bm.undef, 3)


def test_run_trace_files():
    ok = bm.run_trace((TRACES / "read_after_write.trace").read_text())
    assert ok["ok"] and ok["failed_line"] is None
    bad = bm.run_trace((TRACES / "wrong_expectation.trace").read_text())
    assert not bad["ok"] and bad["failed_line"] is not None
    with pytest.raises(ValueError, match=r"2:6"):
        bm.run_trace((TRACES / "syntax_error.trace").read_text())


def test_run_laws_small():
    names = bm.law_names()
    assert len(names) >= 40
    report = bm.run_laws(seed=7, cases=200, exhaustive=False, only=names[:5])
    assert report["summary"] == {"laws": 5, "failed": 0}
    again = bm.run_laws(seed=7, cases=200, exhaustive=False, only=names[:5])
    assert report == again
