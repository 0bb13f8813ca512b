#!/usr/bin/env python
# -*- coding: utf-8 -*-
# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).

from setuptools import find_packages, setup

VERSION = "0.1"

setup(
    name="timescales",
    version=VERSION,
    description="Exact delta, nabla and diamond-alpha calculus on time scales",
    author="The timescales authors",
    license="LGPLv3",
    packages=find_packages(exclude=["examples", "*tests"]),
    long_description="".join(open("README.rst").readlines()[2:]),
    long_description_content_type="text/x-rst",
    install_requires=["jsonschema", "pyyaml", "Jinja2", "scipy", "sympy"],
    test_suite="timescales.tests",
    include_package_data=True,
    package_data={"timescales": ["templates/*.j2"]},
    entry_points={"console_scripts": ["timescales = timescales.__main__:main"]},
)
