"""Local classification of singular second-order linear ODEs.

Each command accepts equation documents as dicts, JSON strings, or paths to
JSON files, and returns the report as a dict. Failures raise LodeError, which
carries the error kind and the command-line exit code.
"""
import json
import os

from . import _lode

__all__ = ["LodeError", "classify", "equivalent", "normal_form", "stokes", "symmetries", "monodromy"]


class LodeError(Exception):
    def __init__(self, kind, message, exit_code, report):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.exit_code = exit_code
        self.report = report


def _text(doc):
    if isinstance(doc, dict):
        return json.dumps(doc)
    if isinstance(doc, os.PathLike) or (isinstance(doc, str) and not doc.lstrip().startswith("{")):
        with open(doc, encoding="utf-8") as f:
            return f.read()
    return doc


def _run(command, docs, order=None, mode=None, **kw):
    text, code = _lode.run(command, [_text(d) for d in docs], order, mode, **kw)
    report = json.loads(text)
    err = report.get("error") if isinstance(report.get("error"), dict) else None
    if code != 0 and err is not None and len(report) == 1:
        raise LodeError(err.get("kind"), err.get("message"), code, report)
    report["exit_code"] = code
    return report


def classify(doc, *, order=None, mode=None):
    return _run("classify", [doc], order, mode)


def equivalent(a, b, *, meromorphic=False, order=None, mode=None):
    return _run("equivalent", [a, b], order, mode, meromorphic=meromorphic)


def normal_form(doc, *, order=None, mode=None):
    return _run("normal-form", [doc], order, mode)


def stokes(doc, *, order=None, mode=None):
    return _run("stokes", [doc], order, mode)


def symmetries(doc, *, order=None, mode=None):
    return _run("symmetries", [doc], order, mode)


def monodromy(doc, *, radius=1.0, tol=1e-8, order=None, mode=None):
    return _run("monodromy", [doc], order, mode, radius=radius, tol=tol)
