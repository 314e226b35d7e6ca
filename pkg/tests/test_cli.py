import io
import json

import jsonschema

from superserre.cli import build_parser, main


def run_cli(argv):
    out = io.StringIO()
    parser = build_parser()
    args = parser.parse_args(argv)
    code = args.fn(args, out)
    return code, out.getvalue()


DIAGRAM_SCHEMA = {
    "type": "object",
    "required": ["nodes", "edges"],
    "properties": {
        "nodes": {"type": "array", "items": {"enum": ["white", "grey", "black"]}},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "count", "arrowTowards", "sign", "bLabel"],
                "properties": {
                    "i": {"type": "integer"},
                    "j": {"type": "integer"},
                    "count": {"type": "integer", "minimum": 1, "maximum": 3},
                    "arrowTowards": {"type": ["integer", "null"]},
                    "sign": {"enum": [-1, 0, 1]},
                    "bLabel": {"type": ["string", "null"]},
                },
            },
        },
    },
}

VERIFY_SCHEMA = {
    "type": "object",
    "required": ["datum", "reports"],
    "properties": {
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["pass", "mismatches", "expectedTotal", "gotTotal"],
            },
        }
    },
}


def test_borels_listing():
    code, text = run_cli(["borels", "A", "--m", "1", "--n", "0"])
    assert code == 0
    assert "3 conjugacy classes" in text
    assert "(distinguished)" in text


def test_cartan_json():
    code, text = run_cli(["cartan", "B", "--m", "0", "--n", "1", "--format", "json"])
    assert code == 0
    data = json.loads(text)
    assert data["A"] == [["2"]]
    assert data["theta"] == [1]
    assert data["kappa"] == 0


def test_diagram_json_schema():
    for argv in (
        ["diagram", "F4", "--borel", "all", "--format", "json"],
        ["diagram", "D21a", "--borel", "all", "--format", "json"],
    ):
        code, text = run_cli(argv)
        assert code == 0
        for line in text.strip().splitlines():
            jsonschema.validate(json.loads(line), DIAGRAM_SCHEMA)


def test_relations_latex_contains_quartic():
    code, text = run_cli(
        ["relations", "A", "--m", "1", "--n", "1", "--borel", "distinguished", "--format", "latex"]
    )
    assert code == 0
    assert "[e_2,[e_1,[e_2,e_3]]]" in text


def test_verify_single_and_exit_code():
    code, text = run_cli(["verify", "D21a", "--alpha", "2"])
    assert code == 0
    assert text.strip() == "PASS total=17 borel=0"


def test_verify_all_g3():
    code, text = run_cli(["verify", "G3", "--all"])
    assert code == 0
    lines = text.strip().splitlines()
    assert len(lines) == 4
    assert all(line.startswith("PASS total=31") for line in lines)


def test_verify_json_schema():
    code, text = run_cli(["verify", "A", "--m", "1", "--n", "0", "--all", "--format", "json"])
    assert code == 0
    data = json.loads(text)
    jsonschema.validate(data, VERIFY_SCHEMA)
    assert len(data["reports"]) == 3


def test_zgrading_text():
    code, text = run_cli(["zgrading", "D21a", "--borel", "1", "--d", "3"])
    assert code == 0
    assert "k=1: dim g_k=4 dim L_k=4 ok" in text
    assert "k=2: dim g_k=0 dim L_k=0 ok" in text


def test_necessity_command():
    code, text = run_cli(["necessity", "A", "--m", "1", "--n", "1", "--borel", "0"])
    assert code == 0
    assert "case-1" in text and "necessary" in text


def test_usage_errors():
    assert main(["verify", "E8"]) == 2
    assert main(["verify", "C", "--n", "2"]) == 2
    assert main(["cartan", "A"]) == 2
    assert main(["zgrading", "A", "--m", "1", "--n", "0"]) == 2


def test_env_height_cap(monkeypatch):
    monkeypatch.setenv("SUPERSERRE_MAX_HEIGHT", "3")
    code, text = run_cli(["verify", "A", "--m", "1", "--n", "0"])
    assert code == 0  # A(1,0) closes at height 2, well inside the cap


def test_verify_jobs_parallel():
    code, text = run_cli(["verify", "A", "--m", "1", "--n", "0", "--all", "--jobs", "2"])
    assert code == 0
    assert len(text.strip().splitlines()) == 3


def test_verify_explicit_borel_index():
    code, text = run_cli(["verify", "F4", "--borel", "5"])
    assert code == 0
    assert text.strip() == "PASS total=40 borel=5"


def test_alpha_negative_value_with_equals_sign():
    code, text = run_cli(["verify", "D21a", "--alpha=-1/2", "--borel", "all"])
    assert code == 0
    assert len(text.strip().splitlines()) == 4


RELATIONS_SCHEMA = {
    "type": "object",
    "required": ["family", "rank", "theta", "cartan", "eSide", "fSide"],
    "properties": {
        "eSide": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["side", "provenance", "nodes", "multidegree", "terms"],
                "properties": {
                    "terms": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["coefficient", "word"],
                        },
                    }
                },
            },
        }
    },
}


def test_relations_json_schema():
    code, text = run_cli(["relations", "D21a", "--borel", "1", "--format", "json"])
    assert code == 0
    data = json.loads(text)
    jsonschema.validate(data, RELATIONS_SCHEMA)
    assert any(el["provenance"] == "case-14" for el in data["eSide"])


def test_single_node_diagram_ascii():
    code, text = run_cli(["diagram", "B", "--m", "0", "--n", "1"])
    assert code == 0
    assert text.strip() == "(*)"
