"""Stand up the HTTP service and walk its endpoints as the UI would.

The server computes all geometry; clients only render.  This script
binds an ephemeral port, exercises each endpoint, and shuts down.
"""

import json
import tempfile
import threading
import urllib.request
from pathlib import Path

from rashomon_trees import EnumerationConfig, enumerate_rashomon
from rashomon_trees.service import AppState, make_server

from toydata import make_credit_dataset

dataset = make_credit_dataset()
rset = enumerate_rashomon(dataset, EnumerationConfig(lam=0.008, epsilon=1.3, depth_cap=3))

workdir = Path(tempfile.mkdtemp(prefix="serve-demo-"))
state = AppState(rset, workdir / "session")
server = make_server(state)
port = server.server_address[1]
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{port}"
print(f"serving on {base}")


def get(path):
    with urllib.request.urlopen(base + path) as resp:
        return json.loads(resp.read())


def post(path, body):
    req = urllib.request.Request(
        base + path, data=json.dumps(body).encode(), method="POST"
    )
    req.add_header("Content-Type", "application/json")
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


meta = get("/api/meta")
print(f"GET  /api/meta          -> {meta['size']} trees, trie height {meta['trie']['height']}")

hierarchy = get("/api/hierarchy?depth=1")
print(f"GET  /api/hierarchy     -> {len(hierarchy['sectors'])} first-ring sectors")

rules = get("/api/rules")
print(f"GET  /api/rules         -> {rules['total_path_links']} path links")

filtered = post("/api/filter", {"features": [{"name": "age", "mode": "must_not_use"}]})
print(f"POST /api/filter        -> {len(filtered['ids'])} age-free trees")

tree_id = filtered["ids"][0]
detail = get(f"/api/trees/{tree_id}")
print(
    f"GET  /api/trees/{tree_id:<7}-> accuracy {detail['metrics']['accuracy']:.3f}, "
    f"{len(detail['paths'])} decision paths"
)

record = post("/api/favorites", {"tree_id": tree_id, "comment": "deployed in the demo"})
print(f"POST /api/favorites     -> bookmarked tree {record['tree_id']}")

export = get("/api/export")
print(f"GET  /api/export        -> {len(export['records'])} curated record(s)")

server.shutdown()
server.server_close()
print("server stopped")
