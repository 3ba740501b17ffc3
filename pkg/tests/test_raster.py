import numpy as np
import pytest

from layerset.raster import (FIG1_GRID, GridSpec, expr_grid, query_grid,
                             write_csv, write_pgm)
from layerset.setlang import (TOMOGRAPHY, WHITNEY, SetlError, compile_program,
                              compile_query, parse, parse_query)

SMALL = GridSpec(-3.75, -3.75, 3.0, 3.0, 45, 36)

NESTED = """universe plane;
set S1 = disk(1, 0, 1.5);
set S2 = disk(-1, 0, 2);
set S3 = disk(0, 1, 1.5);
set Ring = inter(S2, not(S1));
set Blob = union(S1, Ring, inter(S2, S3));
query count(S1, S2, S3);
query union(S1, Ring);
query exactly(2; S1, S2, Blob);
query atmost(2; S1, S2, S3);
query morethan(1; S1, S2, Ring);
query Blob;
query not(union(S1, S2));
"""


def scalar_grid(query, program, grid, backend):
    compiled = compile_query(query, program, backend)
    out = np.empty((grid.height, grid.width), dtype=np.int64)
    for j in range(grid.height):
        for i in range(grid.width):
            out[j, i] = compiled.evaluate((grid.x_center(i), grid.y_center(j)))
    return out


class TestGridSpec:
    def test_pixel_center_mapping(self):
        g = GridSpec(0.0, 0.0, 1.0, 2.0, 10, 20)
        assert g.dx == 0.1 and g.dy == 0.1
        assert g.x_center(0) == pytest.approx(0.05)
        assert g.y_center(19) == pytest.approx(1.95)
        assert g.cell_of(0.051, 1.949) == (0, 19)
        assert g.cell_of(-5, 99) == (0, 19)

    def test_fig1_region(self):
        assert (FIG1_GRID.x_min, FIG1_GRID.y_min) == (-3.75, -3.75)
        assert (FIG1_GRID.x_max, FIG1_GRID.y_max) == (3.0, 3.0)
        assert FIG1_GRID.width == FIG1_GRID.height == 600

    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(0, 0, 0, 1, 10, 10)
        with pytest.raises(ValueError):
            GridSpec(0, 0, 1, 1, 0, 10)


class TestQueryGrids:
    @pytest.mark.parametrize("backend", [TOMOGRAPHY, WHITNEY])
    def test_every_query_matches_scalar_path(self, backend):
        program = parse(NESTED)
        for query in program.queries:
            values, _ = query_grid(query, program, SMALL, backend)
            assert np.array_equal(values, scalar_grid(query, program, SMALL, backend))

    def test_backends_agree_on_grids(self):
        program = parse(NESTED)
        for query in program.queries:
            tomo, _ = query_grid(query, program, SMALL, TOMOGRAPHY)
            whit, _ = query_grid(query, program, SMALL, WHITNEY)
            assert np.array_equal(tomo, whit)

    def test_count_maxval_is_n(self, fig1_source):
        program = parse(fig1_source)
        values, maxval = query_grid(program.queries[0], program, SMALL)
        assert maxval == 4
        assert values.max() == 4 and values.min() == 0

    def test_mask_maxval_is_one(self, fig1_source):
        program = parse(fig1_source)
        values, maxval = query_grid(program.queries[1], program, SMALL)
        assert maxval == 1
        assert set(np.unique(values)) <= {0, 1}

    def test_panel_consistency(self, fig1_source):
        program = parse(fig1_source)
        count, _ = query_grid(program.queries[0], program, SMALL)
        union, _ = query_grid(program.queries[1], program, SMALL)
        masks = [query_grid(parse_query(f"exactly({m})", program), program, SMALL)[0]
                 for m in range(1, 5)]
        assert np.array_equal(sum(masks), union)
        assert np.array_equal(sum(m * g for m, g in enumerate(masks, start=1)), count)

    def test_fused_disk_path_equals_generic_path(self, fig1_source):
        program = parse(fig1_source)
        count_query = program.queries[0]
        fused, _ = query_grid(count_query, program, SMALL)
        generic = sum(expr_grid(e, program, SMALL).astype(np.int64)
                      for e in count_query.members)
        assert np.array_equal(fused, generic)

    def test_non_plane_universe_rejected(self):
        program = parse("universe reals; set A = interval[0, 1]; query count(A);")
        with pytest.raises(SetlError):
            query_grid(program.queries[0], program, SMALL)


class TestWriters:
    def small_values(self):
        return np.array([[0, 1, 2], [3, 4, 0]], dtype=np.int64)

    def test_pgm_ascii_layout(self, tmp_path):
        path = tmp_path / "out.pgm"
        write_pgm(path, self.small_values(), maxval=4)
        data = path.read_bytes()
        assert data == b"P2\n3 2\n4\n3 4 0\n0 1 2\n"

    def test_pgm_binary_layout(self, tmp_path):
        path = tmp_path / "out5.pgm"
        write_pgm(path, self.small_values(), maxval=4, binary=True)
        data = path.read_bytes()
        assert data == b"P5\n3 2\n4\n" + bytes([3, 4, 0, 0, 1, 2])

    def test_pgm_rejects_out_of_range(self, tmp_path):
        with pytest.raises(ValueError):
            write_pgm(tmp_path / "bad.pgm", self.small_values(), maxval=2)

    def test_csv_layout(self, tmp_path):
        path = tmp_path / "out.csv"
        write_csv(path, self.small_values())
        assert path.read_bytes() == b"3,4,0\n0,1,2\n"

    def test_writes_are_deterministic(self, tmp_path, fig1_source):
        program = parse(fig1_source)
        values, maxval = query_grid(program.queries[0], program, SMALL)
        blobs = []
        for k in range(2):
            path = tmp_path / f"run{k}.pgm"
            write_pgm(path, values, maxval)
            blobs.append(path.read_bytes())
        assert blobs[0] == blobs[1]
