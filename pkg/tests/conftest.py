from __future__ import annotations

import itertools

from hypothesis import strategies as st

from rbred.tree import EMPTY, Color, node

# Nested form used by the tests: None for an empty subtree, otherwise
# (is_red, left, right). Keys are assigned 1..n in order when converting.

nested_trees = st.recursive(
    st.none(),
    lambda children: st.tuples(st.booleans(), children, children),
    max_leaves=40,
)


def to_tree(nested, counter=None):
    counter = counter if counter is not None else itertools.count(1)
    if nested is None:
        return EMPTY
    is_red, left, right = nested
    lt = to_tree(left, counter)
    key = next(counter)
    rt = to_tree(right, counter)
    return node(key, Color.RED if is_red else Color.BLACK, lt, rt)


def naive_black_depth(nested):
    """Black depth with NIL counted, or None if some node is unbalanced."""
    if nested is None:
        return 1
    is_red, left, right = nested
    lb, rb = naive_black_depth(left), naive_black_depth(right)
    if lb is None or rb is None or lb != rb:
        return None
    return lb + (0 if is_red else 1)


def naive_no_red_red(nested, parent_red=False):
    if nested is None:
        return True
    is_red, left, right = nested
    if is_red and parent_red:
        return False
    return naive_no_red_red(left, is_red) and naive_no_red_red(right, is_red)


def naive_reds(nested):
    if nested is None:
        return 0
    return int(nested[0]) + naive_reds(nested[1]) + naive_reds(nested[2])


def naive_size(nested):
    return 0 if nested is None else 1 + naive_size(nested[1]) + naive_size(nested[2])


def mirror_nested(nested):
    if nested is None:
        return None
    return (nested[0], mirror_nested(nested[2]), mirror_nested(nested[1]))


def valid_nested(max_leaves=30):
    """Nested trees that satisfy the relaxed red-black rules."""
    return nested_trees.filter(lambda t: naive_no_red_red(t) and naive_black_depth(t) is not None)
