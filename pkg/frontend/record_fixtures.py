"""Record serve responses into fixtures/manifest.json.

Starts the real JSON service on a free port, replays the request list the
UI tests depend on, and stores each (path, body, status, response) row.
Rerun after any change to the wire formats:

    python3 record_fixtures.py
"""

import json
import threading
import urllib.error
import urllib.request
from pathlib import Path

from clusterdeep import IceQuiver, reduce_tree_form
from clusterdeep.cli import make_server

A2 = {"n": 2, "m": 0, "arrows": [[1, 2, 1]]}
A2_FLIPPED = {"n": 2, "m": 0, "arrows": [[2, 1, 1]]}
STAR = {"n": 3, "m": 0, "arrows": [[2, 1, 3], [3, 1, 2]]}
STAR_POINT = {"p": ["0", "-1", "1"], "p_prime": ["0", "-1", "1"], "frozen": []}
BAD_POINT = {"p": ["0", "0"], "p_prime": ["5", "0"], "frozen": []}

TREE2 = reduce_tree_form(IceQuiver.from_arrows(2, 0, [(0, 1, 1)])).to_json_dict()
TREE2_POINT = {"p": ["1", "0"], "p_prime": ["1", "0"], "frozen": ["1", "-1"]}


def post(base, path, body):
    req = urllib.request.Request(
        base + path,
        data=json.dumps(body).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req) as res:
            return res.status, json.loads(res.read().decode())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode())


def get(base, path):
    try:
        with urllib.request.urlopen(base + path) as res:
            return res.status, json.loads(res.read().decode())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode())


POSTS = [
    ("mutate-a2-at-1", "/api/quiver/mutate", {"quiver": A2, "k": 1}),
    ("mutate-a2-flipped-at-1", "/api/quiver/mutate", {"quiver": A2_FLIPPED, "k": 1}),
    ("mutate-a2-at-2", "/api/quiver/mutate", {"quiver": A2, "k": 2}),
    ("mutate-a2-flipped-at-2", "/api/quiver/mutate", {"quiver": A2_FLIPPED, "k": 2}),
    ("mutate-a2-bad-vertex", "/api/quiver/mutate", {"quiver": A2, "k": 5}),
    ("classify-a2", "/api/quiver/classify", {"quiver": A2}),
    ("classify-a2-flipped", "/api/quiver/classify", {"quiver": A2_FLIPPED}),
    ("classify-star", "/api/quiver/classify", {"quiver": STAR}),
    ("dilation-a2", "/api/dilation", {"quiver": A2}),
    ("dilation-a2-flipped", "/api/dilation", {"quiver": A2_FLIPPED}),
    ("dilation-star", "/api/dilation", {"quiver": STAR}),
    (
        "stabilizer-star-open",
        "/api/stabilizer",
        {"quiver": STAR, "point": STAR_POINT, "freeze": []},
    ),
    (
        "stabilizer-star-frozen-2",
        "/api/stabilizer",
        {"quiver": STAR, "point": STAR_POINT, "freeze": [2]},
    ),
    ("validate-star", "/api/point/validate", {"quiver": STAR, "point": STAR_POINT}),
    ("validate-bad", "/api/point/validate", {"quiver": A2, "point": BAD_POINT}),
    (
        "propagate-star-initial",
        "/api/point/propagate",
        {"quiver": STAR, "point": STAR_POINT, "word": []},
    ),
    (
        "propagate-star-word-1",
        "/api/point/propagate",
        {"quiver": STAR, "point": STAR_POINT, "word": [1]},
    ),
    ("deep-check-star", "/api/deep/check", {"quiver": STAR, "point": STAR_POINT}),
    ("tree-cover-two-path", "/api/tree-cover", {"quiver": TREE2, "point": TREE2_POINT}),
]

GETS = [
    ("gallery-a2", "/api/gallery?filter=a2-five-tori"),
    ("gallery-all", "/api/gallery?filter="),
]


def main():
    server = make_server(0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = "http://127.0.0.1:%d" % port
    rows = []
    try:
        for name, path, body in POSTS:
            status, response = post(base, path, body)
            rows.append(
                {
                    "name": name,
                    "method": "POST",
                    "path": path,
                    "body": body,
                    "status": status,
                    "response": response,
                }
            )
            print("%-26s %s -> %d" % (name, path, status))
        for name, path in GETS:
            status, response = get(base, path)
            rows.append(
                {
                    "name": name,
                    "method": "GET",
                    "path": path,
                    "body": None,
                    "status": status,
                    "response": response,
                }
            )
            print("%-26s %s -> %d" % (name, path, status))
    finally:
        server.shutdown()
    out = Path(__file__).parent / "fixtures" / "manifest.json"
    out.write_text(json.dumps(rows, indent=2, sort_keys=True) + "\n")
    print("wrote %s (%d rows)" % (out, len(rows)))


if __name__ == "__main__":
    main()
