"""
Closed (j,k) predicates for the FS family.

Each predicate states, in closed form, a structural property that the services
otherwise establish by exhaustive search; verification compares the two.
"""

# j -> residues of k (mod 3) for which FS(j,k), k >= 3, has Jaeger matchings
JAEGER_RESIDUES = {
    1: {1, 2},
    2: set(),
    3: {0},
}

# j -> number of Jaeger matchings when there are any. Swapping two roles is
# not an automorphism of FS(1,k) (it reverses the seam 3-cycle), so j = 1
# stays at three.
JAEGER_COUNT = {
    1: 3,
    3: 6,
}


def is_snark_member(j, k):
    """Chromatic index 4: the flower snarks (and FS(2,3))."""
    return j == 2 and k % 2 == 1


def chromatic_index_closed(j, k):
    return 4 if is_snark_member(j, k) else 3


def is_two_factor_hamiltonian_closed(j, k):
    return k % 2 == 1 and j in (1, 3)


def is_jaeger_closed(j, k):
    if (j, k) == (1, 2):
        return True
    return k >= 3 and k % 3 in JAEGER_RESIDUES.get(j, set())


def jaeger_count_closed(j, k):
    return JAEGER_COUNT[j] if is_jaeger_closed(j, k) else 0


def classify_family(j, k):
    """
    Closed-form structural profile of FS(j,k).

    Returns dict with 'chromatic_index', 'snark', 'two_factor_hamiltonian',
    'jaeger' and 'jaeger_count'.
    """
    return {
        'chromatic_index': chromatic_index_closed(j, k),
        'snark': is_snark_member(j, k),
        'two_factor_hamiltonian': is_two_factor_hamiltonian_closed(j, k),
        'jaeger': is_jaeger_closed(j, k),
        'jaeger_count': jaeger_count_closed(j, k),
    }
