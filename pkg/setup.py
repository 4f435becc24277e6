#!/usr/bin/env python3
# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

import os
import re
import subprocess

import setuptools
import setuptools.command.sdist


# -------------------------------------------------------------------------------------
def git_describe_to_pep440(version):
    """
    Turn ``git describe`` output such as ``v0.3.1-4-gabc1234`` into a PEP 440
    version, here ``0.3.2.dev4``. A bare tag gives the release version.
    """
    match = re.fullmatch(r"v(\d+)\.(\d+)\.(\d+)(?:-(\d+)-g[0-9a-f]+)?", version)
    if not match:
        raise ValueError("unknown tag format: %s" % version)
    major, minor, patch, dev = match.groups()
    if dev is None:
        return "%s.%s.%s" % (major, minor, patch)
    return "%s.%s.%d.dev%s" % (major, minor, int(patch) + 1, dev)


# -------------------------------------------------------------------------------------
def read_file(fpath, encoding="utf-8"):
    with open(fpath, "r", encoding=encoding) as f:
        return f.read().strip()


# -------------------------------------------------------------------------------------
def get_version():
    try:
        return read_file("treeable/VERSION")
    except IOError:
        pass

    if "TREEABLE_FORCE_VERSION" in os.environ:
        return os.environ["TREEABLE_FORCE_VERSION"]

    try:
        if os.path.isdir(".git"):
            out = subprocess.check_output(
                ["git", "describe", "--tags", "--always"], stderr=subprocess.DEVNULL
            )
            return git_describe_to_pep440(out.decode("utf-8").strip())
    except Exception:
        pass

    return "0.99999.99999"


# -------------------------------------------------------------------------------------
class SDistCommand(setuptools.command.sdist.sdist):
    def write_lines(self, file, lines):
        with open(file, "w", encoding="utf-8") as f:
            for line in lines:
                f.write(line + "\n")

    def make_release_tree(self, base_dir, files):
        super().make_release_tree(base_dir, files)
        version_file = os.path.join(base_dir, "treeable/VERSION")
        self.execute(
            self.write_lines,
            (version_file, [self.distribution.metadata.version]),
            "Writing %s" % version_file,
        )


# -------------------------------------------------------------------------------------
setuptools.setup(
    name="treeable",
    version=get_version(),
    description="Finite high girth graphs with prescribed local statistics",
    long_description=read_file("README.rst"),
    license="MIT",
    author="The treeable developers",
    keywords=["graph", "girth", "unimodular", "local statistics", "networkx"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=["treeable"],
    zip_safe=False,
    include_package_data=True,
    python_requires=">=3.8",
    setup_requires=["setuptools"],
    install_requires=["networkx>=2.6"],
    entry_points={"console_scripts": ["treeable = treeable.cli:main"]},
    cmdclass={"sdist": SDistCommand},
)
