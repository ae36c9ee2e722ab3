"""Ordering helpers for opaque vertex/row labels.

Labels are arbitrary hashable tokens (ints, strings, nested tuples).  All
determinism contracts in this package are stated relative to the total order
defined here, which sorts first by type name so that mixed-type label sets
never raise TypeError.
"""

from __future__ import annotations


def label_key(label):
    """Sort key giving a total order over heterogeneous labels."""
    if isinstance(label, tuple):
        return ("tuple", tuple(label_key(item) for item in label))
    return (type(label).__name__, label)


def sort_labels(labels):
    """Return the labels as a list sorted by :func:`label_key`."""
    return sorted(labels, key=label_key)
