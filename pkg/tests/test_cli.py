import http.client
import json
import threading

import pytest

from clusterdeep.cli import (
    EXIT_CAP,
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    build_certificate,
    main,
    make_server,
    parse_word,
    quiver_report,
)
from clusterdeep.deep import is_mysterious, rank2_companion, star3_companion, tree_cover
from clusterdeep.dilation import dilation_group, stabilizer
from clusterdeep.errors import QuiverFormatError
from clusterdeep.quiver import IceQuiver, path_quiver, star_quiver, triangle_quiver
from clusterdeep.variety import freeze_point, make_point


STAR = star_quiver(2, 3)
STAR_POINT = make_point([0, -1, 1], [0, -1, 1])


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


# -- plumbing --------------------------------------------------------------


def test_parse_word():
    assert parse_word("1,2,1") == (0, 1, 0)
    assert parse_word("") == ()
    assert parse_word(None) == ()
    with pytest.raises(QuiverFormatError):
        parse_word("1,x")
    with pytest.raises(QuiverFormatError):
        parse_word("0,1")


def test_build_certificate_named_and_auto():
    cert = build_certificate(STAR, "gcd-star", 50)
    assert cert.kind == "GcdStar"
    auto = build_certificate(STAR, None, 50)
    assert auto.kind == "GcdStar"
    fork = build_certificate(triangle_quiver(3, 4, 5), None, 50)
    assert fork.kind == "ForkBounded"
    with pytest.raises(QuiverFormatError):
        build_certificate(STAR, "abundant", 50)
    with pytest.raises(QuiverFormatError):
        build_certificate(STAR, "bogus", 50)
    assert build_certificate(path_quiver(3), None, 4) is None


def test_quiver_report_fields():
    doc = quiver_report(STAR)
    assert doc["classes"]["acyclic"] is True
    assert doc["gcd_vector"] == [1, 3, 2]
    assert doc["key"] == {"pair": [2, 3], "mode": "strict"}
    assert doc["fork_return"] is None
    fork = quiver_report(triangle_quiver(3, 4, 5))
    assert fork["fork_return"] is not None
    assert fork["key"] is None


# -- subcommands -----------------------------------------------------------


def test_classify_command(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", STAR.to_json_dict())
    code, out = run_cli(capsys, ["classify", "--quiver", qfile])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc == quiver_report(STAR)


def test_classify_with_word_mutates_first(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", path_quiver(2).to_json_dict())
    code, out = run_cli(capsys, ["classify", "--quiver", qfile, "--word", "1"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["quiver"] == path_quiver(2).mutate(0).to_json_dict()


def test_deep_check_command(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", STAR.to_json_dict())
    pfile = write_json(tmp_path, "p.json", STAR_POINT.to_json_dict())
    code, out = run_cli(capsys, ["deep-check", "--quiver", qfile, "--point", pfile])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["kind"] == "Deep"
    assert doc["certificate"]["kind"] == "GcdStar"


def test_deep_check_named_cert_mismatch(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", STAR.to_json_dict())
    pfile = write_json(tmp_path, "p.json", STAR_POINT.to_json_dict())
    code, _ = run_cli(
        capsys,
        ["deep-check", "--quiver", qfile, "--point", pfile, "--cert", "abundant"],
    )
    assert code == EXIT_INPUT


def test_mysterious_check_command(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", STAR.to_json_dict())
    pfile = write_json(tmp_path, "p.json", STAR_POINT.to_json_dict())
    code, out = run_cli(capsys, ["mysterious-check", "--quiver", qfile, "--point", pfile])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["mysterious"] is True
    assert doc == is_mysterious(STAR, STAR_POINT).to_json_dict()


def test_tree_cover_command(tmp_path, capsys):
    q = rank2_companion(1)
    pt = make_point([1, 0], [1, 0], [1, -1])
    qfile = write_json(tmp_path, "q.json", q.to_json_dict())
    pfile = write_json(tmp_path, "p.json", pt.to_json_dict())
    code, out = run_cli(capsys, ["tree-cover", "--quiver", qfile, "--point", pfile])
    assert code == EXIT_OK
    assert json.loads(out) == tree_cover(q, pt).to_json_dict()


def test_tree_cover_rejects_heavy_arrows(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", STAR.to_json_dict())
    pfile = write_json(tmp_path, "p.json", STAR_POINT.to_json_dict())
    code, _ = run_cli(capsys, ["tree-cover", "--quiver", qfile, "--point", pfile])
    assert code == EXIT_INPUT


def test_star3_command(capsys):
    code, out = run_cli(capsys, ["star3", "2", "3"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["family"] == "HasMysterious"
    code, out = run_cli(capsys, ["star3", "1", "5"])
    assert code == EXIT_OK
    assert json.loads(out)["family"] == "NoMysterious"
    code, _ = run_cli(capsys, ["star3", "0", "3"])
    assert code == EXIT_INPUT


def test_explore_command(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", path_quiver(2).to_json_dict())
    code, out = run_cli(capsys, ["explore", "--quiver", qfile, "--level", "seed"])
    assert code == EXIT_OK
    assert json.loads(out)["node_count"] == 5
    code, out = run_cli(capsys, ["explore", "--quiver", qfile, "--dot"])
    assert code == EXIT_OK
    assert out.startswith("graph mutation_class")


def test_explore_forkless_and_cap(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", triangle_quiver(3, 4, 5).to_json_dict())
    code, out = run_cli(capsys, ["explore", "--quiver", qfile, "--forkless"])
    assert code == EXIT_OK
    assert json.loads(out) == {"count": 0, "members": []}
    pfile = write_json(tmp_path, "q2.json", path_quiver(3).to_json_dict())
    code, _ = run_cli(
        capsys, ["explore", "--quiver", pfile, "--forkless", "--max-nodes", "3"]
    )
    assert code == EXIT_CAP


def test_gallery_command(capsys):
    code, out = run_cli(capsys, ["gallery", "star-2-3-dilation"])
    assert code == EXIT_OK
    assert "PASS star-2-3-dilation" in out
    code, out = run_cli(capsys, ["gallery", "no-such-entry", "--json"])
    assert code == EXIT_OK
    assert json.loads(out)["results"] == []


def test_missing_file_is_input_error(tmp_path, capsys):
    code, _ = run_cli(capsys, ["classify", "--quiver", str(tmp_path / "nope.json")])
    assert code == EXIT_INPUT


def test_invalid_point_is_input_error(tmp_path, capsys):
    qfile = write_json(tmp_path, "q.json", STAR.to_json_dict())
    bad = write_json(
        tmp_path, "p.json", make_point([1, 1, 1], [1, 1, 1]).to_json_dict()
    )
    code, _ = run_cli(capsys, ["mysterious-check", "--quiver", qfile, "--point", bad])
    assert code == EXIT_INPUT


# -- serve mode ------------------------------------------------------------


@pytest.fixture(scope="module")
def server():
    httpd = make_server(0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield httpd.server_address[1]
    httpd.shutdown()
    httpd.server_close()


def post(port, path, payload):
    conn = http.client.HTTPConnection("127.0.0.1", port, timeout=10)
    conn.request(
        "POST", path, body=json.dumps(payload), headers={"Content-Type": "application/json"}
    )
    resp = conn.getresponse()
    body = resp.read().decode()
    conn.close()
    return resp.status, json.loads(body)


def get(port, path):
    conn = http.client.HTTPConnection("127.0.0.1", port, timeout=30)
    conn.request("GET", path)
    resp = conn.getresponse()
    body = resp.read().decode()
    conn.close()
    return resp.status, json.loads(body)


def test_serve_mutate_flips_a2(server):
    a2 = path_quiver(2)
    status, doc = post(server, "/api/quiver/mutate", {"quiver": a2.to_json_dict(), "k": 1})
    assert status == 200
    assert doc == a2.mutate(0).to_json_dict()
    assert doc["arrows"] == [[2, 1, 1]]


def test_serve_classify_matches_library(server):
    status, doc = post(server, "/api/quiver/classify", {"quiver": STAR.to_json_dict()})
    assert status == 200
    assert doc == json.loads(json.dumps(quiver_report(STAR)))


def test_serve_dilation(server):
    status, doc = post(server, "/api/dilation", {"quiver": STAR.to_json_dict()})
    assert status == 200
    assert doc == dilation_group(STAR).to_json_dict()


def test_serve_stabilizer_and_freeze_flip(server):
    body = {"quiver": STAR.to_json_dict(), "point": STAR_POINT.to_json_dict()}
    status, doc = post(server, "/api/stabilizer", body)
    assert status == 200
    assert doc["structure"]["trivial"] is True
    body["freeze"] = [2]
    status, doc = post(server, "/api/stabilizer", body)
    assert status == 200
    assert doc["structure"]["trivial"] is False
    q2, pt2 = freeze_point(STAR, STAR_POINT, 1)
    assert doc == stabilizer(q2, pt2).to_json_dict()


def test_serve_validate(server):
    body = {"quiver": STAR.to_json_dict(), "point": STAR_POINT.to_json_dict()}
    status, doc = post(server, "/api/point/validate", body)
    assert status == 200
    assert doc == {"valid": True, "errors": []}
    bad = {
        "quiver": STAR.to_json_dict(),
        "point": make_point([1, 1, 1], [1, 1, 1]).to_json_dict(),
    }
    status, doc = post(server, "/api/point/validate", bad)
    assert status == 200
    assert doc["valid"] is False
    assert doc["errors"]


def test_serve_propagate(server):
    body = {
        "quiver": STAR.to_json_dict(),
        "point": make_point([1, 1, 1], [2, 2, 2]).to_json_dict(),
        "word": [2],
    }
    status, doc = post(server, "/api/point/propagate", body)
    assert status == 200
    assert doc["word"] == [2]
    assert doc["values"] == ["1", "2", "1"]


def test_serve_deep_check_mysterious(server):
    body = {"quiver": STAR.to_json_dict(), "point": STAR_POINT.to_json_dict()}
    status, doc = post(server, "/api/deep/check", body)
    assert status == 200
    assert doc == is_mysterious(STAR, STAR_POINT).to_json_dict()
    assert doc["mysterious"] is True


def test_serve_tree_cover(server):
    q = rank2_companion(1)
    pt = make_point([1, 0], [1, 0], [1, -1])
    body = {"quiver": q.to_json_dict(), "point": pt.to_json_dict()}
    status, doc = post(server, "/api/tree-cover", body)
    assert status == 200
    assert doc == tree_cover(q, pt).to_json_dict()


def test_serve_gallery(server):
    status, doc = get(server, "/api/gallery?filter=rank2-dilation")
    assert status == 200
    assert doc["ok"] is True
    assert [r["id"] for r in doc["results"]] == ["rank2-dilation"]


def test_serve_malformed_requests(server):
    conn = http.client.HTTPConnection("127.0.0.1", server, timeout=10)
    conn.request("POST", "/api/quiver/mutate", body="{not json")
    resp = conn.getresponse()
    assert resp.status == 400
    doc = json.loads(resp.read().decode())
    conn.close()
    assert doc["code"] == "bad-json"

    status, doc = post(server, "/api/quiver/mutate", {"quiver": {"n": "x"}, "k": 1})
    assert status == 400
    assert set(doc) == {"code", "message", "detail"}

    status, doc = post(server, "/api/quiver/mutate", {"k": 1})
    assert status == 400
    assert doc["code"] == "missing-field"

    status, doc = post(
        server, "/api/quiver/mutate", {"quiver": path_quiver(2).to_json_dict(), "k": 9}
    )
    assert status == 400
    assert doc["code"] == "bad-vertex"

    status, doc = post(server, "/api/nope", {})
    assert status == 404

    body = {
        "quiver": STAR.to_json_dict(),
        "point": make_point([1, 1, 1], [1, 1, 1]).to_json_dict(),
    }
    status, doc = post(server, "/api/stabilizer", body)
    assert status == 400
    assert doc["code"] == "RelationUnsatisfiable"


def test_serve_star3_payload_smoke(server):
    q = star3_companion(2, 3)
    status, doc = post(server, "/api/dilation", {"quiver": q.to_json_dict()})
    assert status == 200
    assert doc["equations"] == [
        "t2^3 t3^2 t̄1 = 1",
        "t1^3 t̄2 = 1",
        "t1^2 t̄3 = 1",
    ]
