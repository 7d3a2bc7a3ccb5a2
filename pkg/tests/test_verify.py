import io
import json

import pytest

from factorlab.config import RunConfig, resolve_checkpoint
from factorlab.verify import CheckpointError, THEOREMS, load_checkpoint, run_verify, selected


def _run(cfg):
    buf = io.StringIO()
    summary = run_verify(cfg, sink=buf)
    return buf.getvalue(), summary


def test_selected():
    assert set(selected(("all",))) == set(THEOREMS) | {"axb"}
    with pytest.raises(KeyError):
        selected(("nope",))


def test_small_catalog_clean():
    text, summary = _run(RunConfig(max_ring=5, max_module=5))
    rec = summary.to_json(selected(("all",)))
    assert rec["violations"] == 0 and not rec["warnings"]
    kinds = {json.loads(line)["kind"] for line in text.splitlines()}
    assert kinds == {"instance", "check"}


def test_records_in_catalog_order_with_workers():
    cfg = RunConfig(max_ring=4, max_module=4, theorems=("lattice", "transfer"))
    a, _ = _run(cfg)
    b, _ = _run(RunConfig(max_ring=4, max_module=4, theorems=("lattice", "transfer"), workers=3))
    assert a == b


class _Stop(Exception):
    pass


def test_resume_matches_fresh_run(tmp_path, monkeypatch):
    monkeypatch.setenv("FACTORLAB_CACHE_DIR", str(tmp_path))
    base = dict(max_ring=5, max_module=5, theorems=("lattice", "atomic"))
    groups = list(base["theorems"])
    full, s_full = _run(RunConfig(**base))
    ck = RunConfig(**base, checkpoint="resume.json")

    def interrupt(done, total):
        if done == 70:
            raise _Stop

    with pytest.raises(_Stop):
        run_verify(ck, sink=io.StringIO(), progress=interrupt)
    assert json.loads(resolve_checkpoint(ck.checkpoint).read_text())["cursor"] == 50
    rest, s_rest = _run(ck)
    # the resumed stream is the fresh stream minus the first 50 instances
    blocks = full.split('{"desc"')
    assert rest == '{"desc"' + '{"desc"'.join(blocks[51:])
    assert s_rest.to_json(groups) == s_full.to_json(groups)


def test_checkpoint_config_mismatch(tmp_path, monkeypatch):
    monkeypatch.setenv("FACTORLAB_CACHE_DIR", str(tmp_path))
    run_verify(RunConfig(max_ring=3, max_module=3, theorems=("lattice",), checkpoint="c.json"))
    with pytest.raises(CheckpointError):
        run_verify(RunConfig(max_ring=4, max_module=3, theorems=("lattice",), checkpoint="c.json"))


def test_checkpoint_tamper(tmp_path):
    path = tmp_path / "c.json"
    cfg = RunConfig(max_ring=3, max_module=3, theorems=("lattice",), checkpoint=str(path))
    run_verify(cfg)
    state = json.loads(path.read_text())
    state["cursor"] = 1
    path.write_text(json.dumps(state))
    with pytest.raises(CheckpointError, match="checksum"):
        load_checkpoint(path, cfg.fingerprint())


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(max_ring=0)
    with pytest.raises(ValueError):
        RunConfig(sample=0)
    a = RunConfig(workers=1, out="x").fingerprint()
    assert a == RunConfig(workers=4, out="y").fingerprint()


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FACTORLAB_CACHE_DIR", str(tmp_path))
    assert resolve_checkpoint("a.json") == tmp_path / "a.json"
    assert resolve_checkpoint(str(tmp_path / "b.json")) == tmp_path / "b.json"
    assert resolve_checkpoint(None) is None
