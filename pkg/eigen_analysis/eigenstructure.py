import dataclasses
import enum
import itertools

import numpy as np
import toolz

import config
from log import logger, log_exectime
from simplex_tensor import check_dimension, simplex_tensor, eigen_residual
from utils.exception_handler import InvalidDimensionError, InvariantViolation, ResidualCheckError
from utils.helper import point_label
from .scalar_functions import ScalarFunctions
from .roots import roots_of_r


class SolutionKind(enum.Enum):
    UNIFORM = 'uniform'
    TWO_LEVEL = 'two_level'


@dataclasses.dataclass(frozen=True)
class UniformOnK:
    """
    Barycentric zero with the level 1/|K| on the support K and 0 elsewhere. Indices are 0-based.
    """
    n: int
    d: int
    support: tuple

    kind = SolutionKind.UNIFORM

    @property
    def sizes(self):
        return (len(self.support), )

    def point(self):
        s = np.zeros(self.n)
        s[list(self.support)] = 1. / len(self.support)
        return s

    def images(self):
        """
        Supports of all images under permutations of {0, ..., n}.
        """
        return [(supp, ) for supp in itertools.combinations(range(self.n + 1), len(self.support))]

    def assemble(self, frame_vectors, supports):
        (supp, ) = supports
        return frame_vectors[:, list(supp)].sum(axis=1) / len(supp)

    def eigenvalue(self):
        return eigenvalue_uniform(self.n, self.d, len(self.support))

    def to_dict(self):
        return {'kind': self.kind.value, 'K': [k + 1 for k in self.support]}


@dataclasses.dataclass(frozen=True)
class TwoLevel:
    """
    Barycentric zero with the level s_low on K1, s_high on K2 (disjoint) and 0 elsewhere. Indices are 0-based.
    """
    n: int
    d: int
    support_low: tuple
    support_high: tuple
    s_low: float
    s_high: float

    kind = SolutionKind.TWO_LEVEL

    @property
    def sizes(self):
        return len(self.support_low), len(self.support_high)

    def point(self):
        s = np.zeros(self.n)
        s[list(self.support_low)] = self.s_low
        s[list(self.support_high)] = self.s_high
        return s

    def images(self):
        k1, k2 = self.sizes
        images = []
        for supp_low in itertools.combinations(range(self.n + 1), k1):
            rest = [k for k in range(self.n + 1) if k not in supp_low]
            for supp_high in itertools.combinations(rest, k2):
                images.append((supp_low, supp_high))
        return images

    def assemble(self, frame_vectors, supports):
        supp_low, supp_high = supports
        return (
            self.s_low * frame_vectors[:, list(supp_low)].sum(axis=1) +
            self.s_high * frame_vectors[:, list(supp_high)].sum(axis=1)
        )

    def eigenvalue(self):
        k1, k2 = self.sizes
        return eigenvalue_two_level(self.n, self.d, k1, k2, self.s_low, self.s_high)

    def to_dict(self):
        return {
            'kind': self.kind.value,
            'K1': [k + 1 for k in self.support_low],
            'K2': [k + 1 for k in self.support_high],
            's_low': self.s_low,
            's_high': self.s_high,
        }


@dataclasses.dataclass(frozen=True)
class WholeSimplex:
    """
    Marker: h vanishes identically on the simplex (d = 2, or n = 2 and d = 4).
    """
    n: int
    d: int


def solution_label(solution):
    """
    (s_1, ..., s_{n-1}) rendered with small rationals, e.g. '(1/2, 1/4)'.
    """
    return point_label(solution.point()[:-1])


@dataclasses.dataclass(frozen=True, eq=False)
class EigenPair:
    """
    A normalized eigenpair. The record stands for the pair (vector, eigenvalue) and, as sign_symmetric is always set
    for the simplex tensor, also for (-vector, (-1)^d eigenvalue).
    :param solution: the canonical barycentric solution it is an image of
    :param supports: the permuted support(s) assembling it
    :param flipped: whether the assembled vector was negated to make its first nonzero coordinate positive
    """
    vector: np.ndarray
    eigenvalue: float
    solution: object
    supports: tuple
    flipped: bool
    residual: float
    sign_symmetric: bool = True

    def to_dict(self):
        support = self.solution.to_dict()
        if self.solution.kind is SolutionKind.UNIFORM:
            support['image'] = {'K': [k + 1 for k in self.supports[0]]}
        else:
            support['image'] = {'K1': [k + 1 for k in self.supports[0]], 'K2': [k + 1 for k in self.supports[1]]}
        support['flipped'] = self.flipped
        return {
            'vector': self.vector.tolist(),
            'mu': self.eigenvalue,
            'support': support,
            'residual': self.residual,
        }


class StructureKind(enum.Enum):
    WHOLE_SPHERE = 'whole_sphere'
    DISCRETE = 'discrete'


@dataclasses.dataclass(frozen=True, eq=False)
class EigenStructure:
    n: int
    d: int
    kind: StructureKind
    pairs: tuple = ()
    mu: float = None

    @property
    def is_whole_sphere(self):
        return self.kind is StructureKind.WHOLE_SPHERE

    @property
    def count_normalized(self):
        """
        Number of normalized eigenpairs (each sign-symmetric record counts twice); None for the whole sphere.
        """
        if self.is_whole_sphere:
            return None
        return sum(2 if pair.sign_symmetric else 1 for pair in self.pairs)

    def vectors(self):
        return np.array([pair.vector for pair in self.pairs]).reshape(len(self.pairs), self.n)

    def eigenvalues(self):
        return np.array([pair.eigenvalue for pair in self.pairs])

    def to_dict(self):
        if self.is_whole_sphere:
            return {'kind': self.kind.value, 'n': self.n, 'd': self.d, 'mu': self.mu, 'pairs': []}
        return {
            'kind': self.kind.value,
            'n': self.n,
            'd': self.d,
            'count_normalized': self.count_normalized,
            'pairs': [pair.to_dict() for pair in self.pairs],
        }


def orbit_key(solution):
    if solution.kind is SolutionKind.UNIFORM:
        return solution.kind, len(solution.support)
    return solution.kind, solution.sizes, solution.s_low


def _check_n_d(n, d):
    return check_dimension(n), check_dimension(d, name='d')


def is_continuum(n, d):
    return d == 2 or (n, d) == (2, 4)


def whole_sphere_eigenvalue(n, d):
    if d == 2:
        return 1. + 1. / n
    elif (n, d) == (2, 4):
        return 9. / 8.
    raise InvalidDimensionError(f'n={n}, d={d} is not a continuum case')


def eigenvalue_uniform(n, d, k_size):
    """
    Eigenvalue of the normalized vector sum_{k in K} v_k / |sum_{k in K} v_k| with |K| = k_size:
    ((n+1-|K|)^{d-1} -/+ |K|^{d-1}) / (n^{d/2} (|K|(n+1-|K|))^{d/2-1}), minus for odd d, plus for even d.
    """
    n, d = _check_n_d(n, d)
    if not 1 <= k_size <= n:
        raise InvalidDimensionError(f'|K| must be in 1..n={n}; got k_size={k_size}')
    sign = -1 if d % 2 == 1 else 1
    numerator = (n + 1 - k_size) ** (d - 1) + sign * k_size ** (d - 1)
    return numerator / (n ** (d / 2) * (k_size * (n + 1 - k_size)) ** (d / 2 - 1))


def eigenvalue_two_level(n, d, k1, k2, s_low, s_high):
    n, d = _check_n_d(n, d)
    numerator = k1 * ((n + 1) * s_low - 1.) ** d + k2 * ((n + 1) * s_high - 1.) ** d + n + 1 - k1 - k2
    # n |z|^2 for the unnormalized z = s_low sum_{K1} v_k + s_high sum_{K2} v_k
    scaled_squared_norm = (n + 1) * s_low ** 2 * k1 + (n + 1) * s_high ** 2 * k2 - 1.
    return numerator / (n ** (d / 2) * scaled_squared_norm ** (d / 2))


def _two_level_solutions(f):
    n, d = f.n, f.d
    s_star = f.s_star()
    solutions = []
    for k1 in range(1, n):
        for k2 in range(1, n - k1 + 1):
            rr = roots_of_r(f, k1, k2)
            if rr.degenerate:
                logger().warning(f'n={n}, d={d}: matching polynomial vanishes for k1={k1}, k2={k2}')
                continue
            for s_low in rr.roots:
                s_high = (1. - k1 * s_low) / k2
                if not s_star < s_high <= 1.:
                    continue
                p_low, p_high = float(f.p(s_low)), float(f.p(s_high))
                if abs(p_low - p_high) > config.TWO_LEVEL_P_RTOL * max(1., abs(p_low)):
                    raise InvariantViolation(
                        f'n={n}, d={d}, k1={k1}, k2={k2}: p(s_low)={p_low!r} != p(s_high)={p_high!r}'
                    )
                for supp_low in itertools.combinations(range(n), k1):
                    rest = [k for k in range(n) if k not in supp_low]
                    for supp_high in itertools.combinations(rest, k2):
                        solutions.append(TwoLevel(n, d, supp_low, supp_high, s_low, s_high))
    return solutions


def enumerate_barycentric(n, d):
    """
    All zeros of h in the unit simplex, as structured solutions with supports in {0, ..., n-1}, or the WholeSimplex
    marker when h vanishes identically.
    Odd d: the uniform solutions on all nonempty K. Even d >= 4: the uniform solutions plus the two-level solutions
    from the roots of the matching polynomial whose high level lies in (s*, 1].
    """
    n, d = _check_n_d(n, d)
    if is_continuum(n, d):
        return WholeSimplex(n, d)
    solutions = [
        UniformOnK(n, d, support)
        for size in range(1, n + 1)
        for support in itertools.combinations(range(n), size)
    ]
    if d % 2 == 0:
        solutions.extend(_two_level_solutions(ScalarFunctions(n, d)))
    return solutions


def canonical_sign(x, mu, d):
    """
    Negates x (and mu, for odd d) unless its first coordinate with |x_i| > 1e-12 is positive.
    :return: (x, mu, flipped)
    """
    nonzero = np.flatnonzero(np.abs(x) > config.ZERO_COORD_TOL)
    if len(nonzero) > 0 and x[nonzero[0]] < 0.:
        return -x, (-mu if d % 2 == 1 else mu), True
    return x, mu, False


def _merge_close(vectors, tol):
    """
    Greedy clustering of the rows of vectors at Euclidean distance <= tol.
    :return: array of representative row indices (first of each cluster), and the cluster label of every row
    """
    m = len(vectors)
    labels = np.full(m, -1)
    representatives = []
    for i in range(m):
        if labels[i] >= 0:
            continue
        close = (labels < 0) & (np.linalg.norm(vectors - vectors[i], axis=1) <= tol)
        labels[close] = len(representatives)
        representatives.append(i)
    return np.array(representatives, dtype=int), labels


def expand_symmetry(canonical, n, d):
    """
    Applies all permutations of {1, ..., n+1} to the supports of the canonical solutions, assembles and normalizes
    the eigenvectors, merges vectors equal within config.DEDUPE_TOL and collinear pairs (sign convention of
    canonical_sign) and checks each resulting eigenpair's residual.
    :return: EigenStructure
    """
    n, d = _check_n_d(n, d)
    if isinstance(canonical, WholeSimplex):
        return EigenStructure(n, d, StructureKind.WHOLE_SPHERE, mu=whole_sphere_eigenvalue(n, d))

    T = simplex_tensor(n, d)
    frame_vectors = T.frame.vectors

    candidates = []
    # canonical solutions with equal sizes and levels have the same orbit
    for solution in toolz.unique(canonical, key=orbit_key):
        mu = solution.eigenvalue()
        for supports in solution.images():
            z = solution.assemble(frame_vectors, supports)
            x = z / np.linalg.norm(z)
            x, signed_mu, flipped = canonical_sign(x, mu, d)
            candidates.append((x, signed_mu, solution, supports, flipped))
    if not candidates:
        return EigenStructure(n, d, StructureKind.DISCRETE, pairs=())

    vectors = np.array([c[0] for c in candidates])
    # exact duplicates up to rounding first, then tolerance-based merging of the much fewer survivors
    _, first_index = np.unique(np.round(vectors, 9) + 0., axis=0, return_index=True)
    first_index = np.sort(first_index)
    representatives, labels = _merge_close(vectors[first_index], config.DEDUPE_TOL)

    pairs = []
    for cluster, rep in enumerate(first_index[representatives]):
        x, mu, solution, supports, flipped = candidates[rep]
        cluster_mus = [candidates[i][1] for i in first_index[labels == cluster]]
        if max(abs(m - mu) for m in cluster_mus) > config.DEDUPE_TOL * max(1., abs(mu)):
            raise InvariantViolation(f'n={n}, d={d}: eigenvalues {cluster_mus} merged for one eigenvector {x}')
        residual = eigen_residual(T, x, mu)
        if residual > config.RESIDUAL_TOL:
            raise ResidualCheckError(
                f'n={n}, d={d}: residual {residual:.3e} of the eigenpair mu={mu!r} from {solution} exceeds '
                f'{config.RESIDUAL_TOL}',
                residual
            )
        pairs.append(EigenPair(
            vector=x, eigenvalue=float(mu), solution=solution, supports=supports, flipped=flipped, residual=residual
        ))

    pairs.sort(key=lambda pair: (-round(pair.eigenvalue, 12), tuple(np.round(pair.vector, 12))))
    return EigenStructure(n, d, StructureKind.DISCRETE, pairs=tuple(pairs))


@log_exectime
def enumerate_eigenpairs(n, d):
    n, d = _check_n_d(n, d)
    structure = expand_symmetry(enumerate_barycentric(n, d), n, d)
    if not structure.is_whole_sphere:
        counts = toolz.frequencies(pair.solution.kind.value for pair in structure.pairs)
        logger().info(f'n={n}, d={d}: {len(structure.pairs)} eigenvector lines {counts}')
    return structure


def solution_unit_vector(solution):
    """
    The normalized eigenvector assembled from a canonical solution, without sign normalization.
    """
    frame_vectors = simplex_tensor(solution.n, solution.d).frame.vectors
    supports = (solution.support, ) if solution.kind is SolutionKind.UNIFORM \
        else (solution.support_low, solution.support_high)
    z = solution.assemble(frame_vectors, supports)
    return z / np.linalg.norm(z)


def permutation_image(pair, permutation):
    """
    Reassembles the eigenvector of pair after applying a permutation of {0, ..., n} to its supports.
    """
    supports = tuple(tuple(sorted(permutation[k] for k in supp)) for supp in pair.supports)
    frame_vectors = simplex_tensor(pair.solution.n, pair.solution.d).frame.vectors
    z = pair.solution.assemble(frame_vectors, supports)
    return z / np.linalg.norm(z)
