# helpers.py - helper functions for CubeSub
#
# Copyright 2026 the CubeSub developers and contributors.
#
# This file is part of CubeSub.
#
# CubeSub is distributed under the 3-clause BSD license. For more
# information, see LICENSE.
"""Helper functions shared by the CubeSub modules.

Quaternions are stored as numpy arrays in scalar-first order
``(w, x, y, z)``, which is also the order used in the JSON file
formats. :mod:`scipy.spatial.transform` uses scalar-last order, so the
conversion functions :func:`rotation_from_quat` and
:func:`quat_from_rotation` are the only places where the two orders
meet.

"""
from functools import lru_cache
from itertools import permutations
from itertools import product
import math

import numpy as np
from scipy.spatial.transform import Rotation

from .exceptions import IllegalArgumentError

#: The identity quaternion in scalar-first order.
IDENTITY_QUAT = np.array([1.0, 0.0, 0.0, 0.0])

#: Number of significant digits kept when floats are written to JSON.
JSON_DIGITS = 12


def skew(vector):
    """Returns the skew-symmetric cross-product matrix of a 3-vector.

    For any vectors ``a`` and ``b``, ``skew(a) @ b == np.cross(a, b)``.

    """
    x, y, z = vector
    return np.array([[0.0, -z, y],
                     [z, 0.0, -x],
                     [-y, x, 0.0]])


def as_vector(value, size, name='value'):
    """Returns `value` as a finite one-dimensional float array of length
    `size`.

    Raises :exc:`IllegalArgumentError` naming `name` if the shape is wrong
    or any entry is not finite.

    """
    array = np.asarray(value, dtype=float).reshape(-1)
    if array.shape != (size, ):
        msg = '{0} must have {1} entries, got {2}'
        raise IllegalArgumentError(msg.format(name, size, array.size))
    if not np.all(np.isfinite(array)):
        raise IllegalArgumentError('{0} must be finite'.format(name))
    return array


def as_matrix(value, shape, name='value'):
    """Returns `value` as a finite float array of the given `shape`."""
    array = np.asarray(value, dtype=float)
    if array.shape != tuple(shape):
        msg = '{0} must have shape {1}, got {2}'
        raise IllegalArgumentError(msg.format(name, tuple(shape), array.shape))
    if not np.all(np.isfinite(array)):
        raise IllegalArgumentError('{0} must be finite'.format(name))
    return array


def unit(vector, name='vector'):
    """Returns `vector` scaled to unit length.

    Raises :exc:`IllegalArgumentError` for a zero vector.

    """
    vector = np.asarray(vector, dtype=float)
    norm = np.linalg.norm(vector)
    if norm == 0 or not math.isfinite(norm):
        raise IllegalArgumentError('{0} must be nonzero'.format(name))
    return vector / norm


def is_symmetric(matrix, tolerance=1e-9):
    """Returns ``True`` if and only if `matrix` equals its transpose up to
    `tolerance` relative to its largest entry.

    """
    matrix = np.asarray(matrix, dtype=float)
    scale = max(1.0, np.max(np.abs(matrix)))
    return np.allclose(matrix, matrix.T, atol=tolerance * scale, rtol=0)


def is_spd(matrix, tolerance=0.0):
    """Returns ``True`` if and only if `matrix` is symmetric and its
    smallest eigenvalue exceeds `tolerance`.

    """
    if not is_symmetric(matrix):
        return False
    return np.linalg.eigvalsh(0.5 * (matrix + matrix.T))[0] > tolerance


def rotation_from_quat(quat):
    """Returns a :class:`scipy.spatial.transform.Rotation` for a
    scalar-first quaternion ``(w, x, y, z)``.

    """
    w, x, y, z = quat
    return Rotation.from_quat([x, y, z, w])


def quat_from_rotation(rotation):
    """Returns the scalar-first quaternion of a
    :class:`~scipy.spatial.transform.Rotation`, with non-negative scalar
    part.

    """
    x, y, z, w = rotation.as_quat()
    quat = np.array([w, x, y, z])
    return -quat if w < 0 else quat


def quat_multiply(left, right):
    """Returns the product ``left ⊗ right`` of two scalar-first unit
    quaternions, that is the rotation `right` followed by `left`.

    The result has a non-negative scalar part.

    """
    rotation = rotation_from_quat(left) * rotation_from_quat(right)
    return quat_from_rotation(rotation)


def quat_rate(quat, omega):
    """Returns the derivative ``½ q ⊗ (0, ω)`` of the scalar-first
    quaternion `quat` under the body angular velocity `omega`.

    """
    omega = np.asarray(omega, dtype=float)
    rates = np.zeros((4, 4))
    rates[0, 1:] = -omega
    rates[1:, 0] = omega
    rates[1:, 1:] = -skew(omega)
    return 0.5 * rates @ np.asarray(quat, dtype=float)


def quat_conjugate(quat):
    """Returns the conjugate (the inverse, for unit quaternions)."""
    return np.array([quat[0], -quat[1], -quat[2], -quat[3]])


def quat_error_vector(desired, actual):
    """Returns the rotation vector of ``desired ⊗ actual⁻¹``, expressed in
    the world frame.

    The shorter of the two equivalent rotations is taken, so the result
    has norm at most π.

    """
    error = quat_multiply(desired, quat_conjugate(actual))
    return rotation_from_quat(error).as_rotvec()


@lru_cache(maxsize=None)
def _cube_rotations():
    rotations = []
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            matrix = np.zeros((3, 3), dtype=int)
            for row, (col, sign) in enumerate(zip(perm, signs)):
                matrix[row, col] = sign
            if round(np.linalg.det(matrix)) == 1:
                rotations.append(matrix)
    return tuple(rotations)


def cube_rotations():
    """Returns the 24 proper rotations of the cube as integer 3×3 matrices.

    The identity is always the first element.

    """
    rotations = [r.copy() for r in _cube_rotations()]
    identity = next(i for i, r in enumerate(rotations)
                    if np.array_equal(r, np.eye(3, dtype=int)))
    rotations.insert(0, rotations.pop(identity))
    return rotations


def is_cube_rotation(matrix):
    """Returns ``True`` if `matrix` is one of the 24 proper cube
    rotations.

    """
    matrix = np.asarray(matrix)
    if matrix.shape != (3, 3):
        return False
    return any(np.allclose(matrix, r) for r in _cube_rotations())


def nearest_cube_rotation(matrix):
    """Returns the proper cube rotation closest to the rotation `matrix`
    (the one maximizing ``trace(Cᵀ R)``), as a float matrix.

    """
    matrix = np.asarray(matrix, dtype=float)
    best = max(_cube_rotations(), key=lambda r: np.trace(r.T @ matrix))
    return best.astype(float)


def round_floats(value, digits=JSON_DIGITS):
    """Recursively rounds every float in `value` (a tree of dictionaries,
    lists, tuples and numpy arrays) to `digits` significant digits.

    Numpy arrays and scalars are converted to lists and builtin numbers,
    so the result can be handed directly to :func:`json.dumps`.

    """
    if isinstance(value, dict):
        return {k: round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, digits) for v in value]
    if isinstance(value, np.ndarray):
        return round_floats(value.tolist(), digits)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return float('{0:.{1}g}'.format(value, digits))
    return value
