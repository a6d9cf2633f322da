import json
import re


from estar.cli import main
from estar.core import Partition
from estar.eggbox import eggbox_dot
from estar.embedding import make_right_group
from estar.engine import enumerate_semigroup
from estar.tables import cyclic_group, left_zero


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eggbox_t3():
    dot = eggbox_dot(enumerate_semigroup("T", Partition.universal(3)))
    clusters = re.findall(r'label="D\d+: rank (\d), (\d+) elements";\n\s+d\d+ \[label=<(.*)>\];', dot)
    by_rank = {int(r): (int(n), body) for r, n, body in clusters}
    assert sorted(by_rank) == [1, 2, 3]
    n1, b1 = by_rank[1]
    assert n1 == 3 and b1.count("<TR>") == 1 and b1.count("<TD>") == 3 and b1.count("*") == 3
    n2, b2 = by_rank[2]
    assert n2 == 18 and b2.count("<TR>") == 3 and b2.count("<TD>") == 9
    assert b2.count("(2)") == 9 and b2.count("*") == 6  # two idempotents per R-class
    n3, b3 = by_rank[3]
    assert n3 == 6 and b3.count("<TD>") == 1 and "(6)*" in b3


def test_cli_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--blocks", "2,2", "--kind", "testar")
    data = json.loads(out)
    assert code == 0 and len(data["elements"]) == 32
    code, out, _ = run(capsys, "enumerate", "--blocks", "4", "--kind", "t")
    assert len(json.loads(out)["elements"]) == 256
    code, out, _ = run(capsys, "enumerate", "--blocks", "2,2", "--kind", "regt", "--kind", "testar")
    a, b = json.loads(out)
    assert a["elements"] == b["elements"]


def test_cli_partition_json(capsys, tmp_path):
    p = tmp_path / "E.json"
    p.write_text('{"n": 4, "blocks": [[0, 2], [1, 3]]}')
    code, out, _ = run(capsys, "enumerate", "--partition", str(p))
    assert code == 0 and len(json.loads(out)["elements"]) == 32


def test_cli_classify(capsys):
    code, out, _ = run(capsys, "classify", "--blocks", "2,2", "--img", "0,1,0,1")
    data = json.loads(out)
    assert data["E_preserving"] and not data["E_star_preserving"] and data["z_set"] == [1]
    code, out, _ = run(capsys, "classify", "--blocks", "2,2", "--img", "2,2,0,0")
    data = json.loads(out)
    assert data["regular"] and data["in_kernel_q2"] and data["idempotent"] is False
    assert data["class_map"] == [1, 0] and data["card_vector"] == [1, 1]


def test_cli_greens(capsys):
    code, out, _ = run(capsys, "greens", "--blocks", "2,2", "--relation", "D")
    data = json.loads(out)
    assert code == 0 and data["size"] == 32
    assert len(data["classifications"][0]["classes"]) == 3


def test_cli_ideals(capsys):
    code, out, _ = run(capsys, "ideals", "--blocks", "2,2", "--q-vector", "2,2", "--enumerate", "--check-minimal")
    data = json.loads(out)
    assert code == 0
    assert data["q_set"]["size"] == 8
    assert [i["size"] for i in data["ideals"]] == [8, 24, 32]
    assert data["kernel_q2"]["contained_in_every_ideal"]


def test_cli_ideals_bad_vector(capsys):
    code, _, err = run(capsys, "ideals", "--blocks", "2,2", "--q-vector", "2,5")
    assert code == 2 and "entry 1" in err


def test_cli_kernel(capsys):
    code, out, _ = run(capsys, "kernel", "--blocks", "2,2", "--right-group-check", "--decompose", "--iso-tz-check")
    data = json.loads(out)
    assert code == 0 and data["kernel_size"] == 8
    assert len(data["h_classes"]) == 4
    assert data["iso_to_full_transformation_semigroup"]["non_idempotent_witness"] == [2, 2, 0, 0]
    code, out, _ = run(capsys, "kernel", "--blocks", "3", "--format", "table")
    assert code == 0 and "|Q(2)| = 3" in out


def test_cli_embed(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps(make_right_group(cyclic_group(2), 2).to_json()))
    code, out, _ = run(capsys, "embed", str(p))
    assert code == 0 and json.loads(out)["report"]["injective"]
    p.write_text(json.dumps(left_zero(2).to_json()))
    code, _, err = run(capsys, "embed", str(p))
    assert code == 2 and "not a right group" in err


def test_cli_capacity_error(capsys):
    code, _, err = run(capsys, "enumerate", "--blocks", "8", "--kind", "t")
    assert code == 2 and "enumeration_n" in err


def test_cli_verify_deterministic(capsys):
    argv = ("verify", "--sweep-n-max", "3", "--json", "--no-embedding")
    code, first, _ = run(capsys, *argv)
    code2, second, _ = run(capsys, *argv)
    assert code == code2 == 0 and first == second
    data = json.loads(first)
    assert data["counts"]["fail"] == 0


def test_cli_verify_single_instance(capsys):
    code, out, _ = run(capsys, "verify", "--blocks", "2,1", "--checks", "kernel-structure,iso-criterion", "--no-embedding")
    assert code == 0 and out.splitlines()[-1].startswith("PASS")


def test_cli_requires_instance(capsys):
    code, _, err = run(capsys, "greens")
    assert code == 2 and "--blocks" in err
