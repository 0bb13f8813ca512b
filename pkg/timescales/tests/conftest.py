# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Expand testscenarios classes at collection time when running under pytest.

pytest's unittest support binds each test method to the collected instance, so
``WithScenarios.run``'s per-scenario clones would execute against an instance
whose ``setUp`` never ran.  Collect one subclass per scenario instead, with the
scenario attributes applied and ``scenarios`` cleared, which is what
``testscenarios.generate_scenarios`` does under a plain unittest runner.
"""
import inspect
import re

import testscenarios
from _pytest.unittest import UnitTestCase


def _scenario_init(base, attrs):
    # Set scenario attributes on the instance, as testscenarios does, so that
    # callables are not turned into bound methods.
    def __init__(self, *args, **kwargs):
        base.__init__(self, *args, **kwargs)
        for key, value in attrs.items():
            setattr(self, key, value)

    return __init__


def pytest_pycollect_makeitem(collector, name, obj):
    if not (
        inspect.isclass(obj)
        and issubclass(obj, testscenarios.WithScenarios)
        and getattr(obj, "scenarios", None)
    ):
        return None
    items = []
    for scenario_name, attrs in obj.scenarios:
        label = re.sub(r"\W+", "_", scenario_name).strip("_")
        cls = type(
            "%s_%s" % (name, label),
            (obj,),
            {
                "scenarios": None,
                "__init__": _scenario_init(obj, attrs),
                "__module__": obj.__module__,
            },
        )
        # pytest resolves collected classes by name on the module.
        setattr(collector.obj, cls.__name__, cls)
        items.append(UnitTestCase.from_parent(collector, name=cls.__name__))
    return items
