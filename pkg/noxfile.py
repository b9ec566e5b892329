#!/usr/bin/env -S uv run --script

# /// script
# requires-python = ">=3.12"
# dependencies = [
#     "nox>=2026.7.11",
# ]
# ///

"""Config file for nox."""
# pyright: reportUnusedCallResult=false

# * Imports ----------------------------------------------------------------------------
from __future__ import annotations

import sys
from pathlib import Path
from typing import TYPE_CHECKING

import nox

if TYPE_CHECKING:
    from nox import Session


# * Names ------------------------------------------------------------------------------

PACKAGE_NAME = "acm-atlas"
IMPORT_NAME = "acm_atlas"

# * nox options ------------------------------------------------------------------------

ROOT = Path(__file__).parent

nox.needs_version = ">=2024.10.9"
nox.options.reuse_existing_virtualenvs = True
nox.options.sessions = ["lint", "typecheck", "test"]
nox.options.default_venv_backend = "uv"

PYTHON_ALL_VERSIONS = nox.project.python_versions(
    nox.project.load_toml("pyproject.toml"),
)
PYTHON_DEFAULT_VERSION = PYTHON_ALL_VERSIONS[-1]


def install_dependencies(session: Session, *groups: str) -> None:
    """Sync dependency groups (and the package) into the session venv."""
    session.run_install(
        "uv",
        "sync",
        "--no-default-groups",
        *(f"--group={g}" for g in groups),
        f"--python={session.virtualenv.location}",
        env={"UV_PROJECT_ENVIRONMENT": session.virtualenv.location},
    )


# * Sessions ---------------------------------------------------------------------------
@nox.session(python=PYTHON_ALL_VERSIONS)
def test(session: Session) -> None:
    """Run pytest (with coverage unless ``--no-cov`` is passed)."""
    install_dependencies(session, "test")

    opts = list(session.posargs)
    if "--no-cov" not in opts and not any(o.startswith("--cov") for o in opts):
        session.env["COVERAGE_FILE"] = str(
            Path(session.create_tmp()) / f".coverage-{sys.platform}"
        )
        opts.append(f"--cov={IMPORT_NAME}")

    session.run("pytest", *opts)


@nox.session(python=False)
def coverage(session: Session) -> None:
    """Combine and report coverage from test sessions."""
    paths = list(Path(".nox").glob("test-*/tmp/.coverage*"))
    session.run("uvx", "coverage", "combine", "--keep", "-a", *paths)
    session.run("uvx", "coverage", "report")


@nox.session(python=False)
def lint(session: Session) -> None:
    """Run ruff check and format."""
    session.run("uvx", "ruff", "check", *session.posargs)
    session.run("uvx", "ruff", "format", "--check")


@nox.session(python=PYTHON_DEFAULT_VERSION)
def typecheck(session: Session) -> None:
    """Run mypy and basedpyright."""
    install_dependencies(session, "test", "mypy", "basedpyright", "nox")
    session.run("mypy", *session.posargs)
    session.run("basedpyright", *session.posargs)
