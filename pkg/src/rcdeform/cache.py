"""On-disk cache of computed elements, in the canonical document format.

Reads need no coordination (writes are atomic renames); writers take a
lock so concurrent processes do not collide on the temp file.  Cached
values are deterministic, so a lost race rewrites identical bytes.
"""

import os
import tempfile

from filelock import FileLock

from . import serialize

ENV_VAR = "RC_CACHE_DIR"
_FAMILIES = ("A", "B", "RC")


def default_cache_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "rcdeform")


class DiskCache:
    def __init__(self, directory=None):
        self.directory = directory or default_cache_dir()

    def _path(self, family, n):
        return os.path.join(self.directory, "%s_%d.json" % (family, n))

    def get(self, family, n):
        path = self._path(family, n)
        try:
            with open(path) as fh:
                text = fh.read()
        except FileNotFoundError:
            return None
        return serialize.doc_to_element(serialize.loads(text))

    def put(self, family, n, obj):
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(family, n)
        text = serialize.dumps(
            serialize.element_to_doc(obj, {"generator": family, "order": n})
        )
        lock = FileLock(path + ".lock")
        with lock:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(text)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    def entries(self):
        try:
            names = sorted(os.listdir(self.directory))
        except FileNotFoundError:
            return []
        out = []
        for name in names:
            if not name.endswith(".json"):
                continue
            path = os.path.join(self.directory, name)
            try:
                with open(path) as fh:
                    doc = serialize.loads(fh.read())
            except (ValueError, OSError):
                out.append((name, "unreadable", ""))
                continue
            out.append((name, doc["kind"], serialize.content_hash(doc)))
        return out

    def clear(self):
        try:
            names = os.listdir(self.directory)
        except FileNotFoundError:
            return 0
        removed = 0
        for name in names:
            if name.endswith(".json") or name.endswith(".lock"):
                os.unlink(os.path.join(self.directory, name))
                removed += 1
        return removed
