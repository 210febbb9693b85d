""" JSON document helpers shared by sequences, reports and the command line. """

from __future__ import annotations
from pathlib import Path
from typing import Any
import hashlib
import json

from .probability import MixingError


class DocumentError(MixingError):
    pass


def read_json(path: Path) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as doc_file:
            return json.load(doc_file)
    except json.JSONDecodeError as err:
        raise DocumentError(f"{path} is not valid JSON: {err}")
    except OSError as err:
        raise DocumentError(f"Cannot read {path}: {err}")


def write_json(obj: Any, path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as doc_file:
        json.dump(obj, doc_file, indent=1)


def dumps(obj: Any) -> str:
    """ Canonical text of a document: sorted keys, no insignificant whitespace. """
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(path: Path) -> str:
    with open(path, 'rb') as doc_file:
        return hashlib.sha256(doc_file.read()).hexdigest()
