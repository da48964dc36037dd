"""Single canonical JSON encoding, shared by every wire surface.

The HTTP endpoints must mirror the in-process operations byte-for-byte,
so everything that serializes a response goes through dump_json.
"""

from __future__ import annotations

import json


def dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))
