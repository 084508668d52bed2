import dataclasses

import numpy as np
import scipy.optimize
import scipy.spatial.distance

import config
from eigen_analysis import WholeSimplex
from utils.exception_handler import InvalidInputError
from utils.helper import point_label


@dataclasses.dataclass(frozen=True, eq=False)
class MatchReport:
    """
    :param matched: tuples (oracle index, enumeration index, distance)
    :param unmatched_oracle: indices of oracle zeros without an enumerated counterpart
    :param unmatched_enumeration: indices of enumerated solutions without an oracle counterpart
    :param continuum: True if both sides flag the continuum
    :param continuum_mismatch: True if exactly one side flags the continuum
    """
    n: int
    d: int
    matched: tuple = ()
    unmatched_oracle: tuple = ()
    unmatched_enumeration: tuple = ()
    continuum: bool = False
    continuum_mismatch: bool = False
    oracle_points: np.ndarray = None
    enumeration_points: np.ndarray = None

    @property
    def ok(self):
        return not (self.unmatched_oracle or self.unmatched_enumeration or self.continuum_mismatch)

    def to_dict(self):
        def labels(points, indices):
            return [point_label(points[i][:-1]) for i in indices]

        if self.continuum or self.continuum_mismatch:
            return {'continuum': self.continuum, 'continuum_mismatch': self.continuum_mismatch, 'ok': self.ok}
        return {
            'matched': len(self.matched),
            'max_distance': max((dist for *_, dist in self.matched), default=0.),
            'unmatched_oracle': labels(self.oracle_points, self.unmatched_oracle),
            'unmatched_enumeration': labels(self.enumeration_points, self.unmatched_enumeration),
            'ok': self.ok,
        }


def compare_with_enumeration(zero_set, canonical, tol=config.ORACLE_MATCH_TOL):
    """
    One-to-one matching of the oracle zeros with the enumerated barycentric solutions, by minimal total distance,
    accepting pairs at distance <= tol.
    :param zero_set: OracleZeroSet
    :param canonical: output of enumerate_barycentric for the same (n, d)
    :return: MatchReport
    """
    n, d = zero_set.n, zero_set.d
    if isinstance(canonical, WholeSimplex):
        if (canonical.n, canonical.d) != (n, d):
            raise InvalidInputError(f'cannot compare n={n}, d={d} with n={canonical.n}, d={canonical.d}')
        return MatchReport(n, d, continuum=zero_set.continuum, continuum_mismatch=not zero_set.continuum)
    if zero_set.continuum:
        return MatchReport(n, d, continuum_mismatch=True)
    if any((solution.n, solution.d) != (n, d) for solution in canonical):
        raise InvalidInputError(f'enumerated solutions do not all belong to n={n}, d={d}')

    oracle_points = zero_set.zeros
    enumeration_points = np.array([solution.point() for solution in canonical]).reshape(-1, n)
    matched = []
    if len(oracle_points) and len(enumeration_points):
        distance = scipy.spatial.distance.cdist(oracle_points, enumeration_points)
        rows, cols = scipy.optimize.linear_sum_assignment(distance)
        matched = [(int(i), int(j), float(distance[i, j])) for i, j in zip(rows, cols) if distance[i, j] <= tol]
    matched_oracle = {i for i, _, _ in matched}
    matched_enumeration = {j for _, j, _ in matched}
    return MatchReport(
        n, d,
        matched=tuple(matched),
        unmatched_oracle=tuple(i for i in range(len(oracle_points)) if i not in matched_oracle),
        unmatched_enumeration=tuple(j for j in range(len(enumeration_points)) if j not in matched_enumeration),
        oracle_points=oracle_points,
        enumeration_points=enumeration_points,
    )
