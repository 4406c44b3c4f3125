import json

import pytest

from gillab.cache import family_filename, load_family, save_family
from gillab.cantor import build_family
from gillab.errors import CacheError


@pytest.fixture(scope="module")
def small_family():
    return build_family(1, 24, 15)


class TestCache:
    def test_round_trip(self, small_family, tmp_path):
        path = save_family(small_family, 4, tmp_path)
        assert path.exists()
        loaded = load_family(1, 24, tmp_path)
        for r in small_family.grid():
            for d in range(5):
                assert (loaded.member(r).stage(d).to_text()
                        == small_family.member(r).stage(d).to_text())

    def test_rebuild_byte_identical(self, small_family, tmp_path):
        p1 = save_family(small_family, 4, tmp_path / "a")
        p2 = save_family(build_family(1, 24, 15), 4, tmp_path / "b")
        assert p1.read_bytes() == p2.read_bytes()

    def test_missing_file(self, tmp_path):
        with pytest.raises(CacheError, match="not built"):
            load_family(1, 24, tmp_path)

    def test_corrupt_json(self, small_family, tmp_path):
        path = save_family(small_family, 3, tmp_path)
        path.write_text("{not json")
        with pytest.raises(CacheError, match="unreadable"):
            load_family(1, 24, tmp_path)

    def test_hash_mismatch(self, small_family, tmp_path):
        path = save_family(small_family, 3, tmp_path)
        payload = json.loads(path.read_text())
        member = sorted(payload["members"])[0]
        payload["members"][member]["stages"][0] = "0..1"
        path.write_text(json.dumps(payload))
        with pytest.raises(CacheError, match="content-hash"):
            load_family(1, 24, tmp_path)

    def test_tampered_hash_caught_by_cover_diff(self, small_family, tmp_path):
        # an attacker fixing up the hash still fails the rebuild comparison
        from gillab.cache import _content_hash
        path = save_family(small_family, 3, tmp_path)
        payload = json.loads(path.read_text())
        member = sorted(payload["members"])[0]
        payload["members"][member]["stages"][0] = "0..1"
        payload["contentHash"] = _content_hash(payload)
        path.write_text(json.dumps(payload))
        with pytest.raises(CacheError, match="differs from cache"):
            load_family(1, 24, tmp_path)

    def test_missing_field(self, small_family, tmp_path):
        path = save_family(small_family, 3, tmp_path)
        payload = json.loads(path.read_text())
        del payload["members"]
        path.write_text(json.dumps(payload))
        with pytest.raises(CacheError, match="missing field"):
            load_family(1, 24, tmp_path)

    def test_filename_stable(self):
        assert family_filename(2, 56) == family_filename(2, 56)
        assert family_filename(2, 56) != family_filename(1, 56)
