"""Regular grids, sampled complex fields, and grid-aware Fourier transforms.

A ``GridSpec`` is a uniform rectangular grid: per-axis origin, spacing and
point count, with axis 0 = x (propagation direction), axis 1 = y, etc.
``ComplexField`` couples a grid with sampled complex values and a ``space``
tag ("position" or "frequency").

``field_fft``/``field_ifft`` turn sampled fields into numerical estimates of
the continuous Fourier transform pair

    fhat(k) = integral f(r) e^{-i k.r} d^n r
    f(r)    = (2 pi)^{-n} integral fhat(k) e^{i k.r} d^n k

via the FFT plus the phase and measure factors the grid origin and spacing
demand. Frequency-space fields are stored on the monotonically increasing
(fftshifted) wavenumber grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GridSpec",
    "ComplexField",
    "field_fft",
    "field_ifft",
    "read_field_csv",
    "write_field_csv",
    "write_pgm",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid: point i along axis a sits at origin[a] + i * spacing[a]."""

    origin: tuple[float, ...]
    spacing: tuple[float, ...]
    shape: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.origin) == len(self.spacing) == len(self.shape)):
            raise ValueError("origin, spacing and shape must have equal length")
        if any(n < 1 for n in self.shape):
            raise ValueError("grid shape entries must be positive")
        if any(d <= 0 for d in self.spacing):
            raise ValueError("grid spacing entries must be positive")

    @classmethod
    def centered(cls, extent, shape, center=None) -> "GridSpec":
        """FFT-friendly grid covering [center - extent, center + extent).

        ``extent`` is the half-width per axis (scalar broadcasts); the right
        endpoint is excluded so the grid tiles periodically, spacing is
        2 * extent / n.
        """
        shape = tuple(int(n) for n in np.atleast_1d(shape))
        ext = np.broadcast_to(np.asarray(extent, dtype=float), (len(shape),))
        if center is None:
            ctr = np.zeros(len(shape))
        else:
            ctr = np.broadcast_to(np.asarray(center, dtype=float), (len(shape),))
        spacing = tuple(2.0 * e / n for e, n in zip(ext, shape))
        origin = tuple(c - e for c, e in zip(ctr, ext))
        return cls(origin=origin, spacing=spacing, shape=shape)

    @property
    def ndim(self) -> int:
        return len(self.shape)

    def axes(self) -> list[np.ndarray]:
        return [
            o + d * np.arange(n)
            for o, d, n in zip(self.origin, self.spacing, self.shape)
        ]

    def mesh(self) -> list[np.ndarray]:
        return list(np.meshgrid(*self.axes(), indexing="ij"))

    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def fourier_dual(self) -> "GridSpec":
        """The sorted wavenumber grid of this grid's DFT."""
        dk = tuple(2.0 * np.pi / (n * d) for n, d in zip(self.shape, self.spacing))
        origin = tuple(-dki * (n // 2) for dki, n in zip(dk, self.shape))
        return GridSpec(origin=origin, spacing=dk, shape=self.shape)


@dataclass
class ComplexField:
    """Complex samples on a grid; space is "position" or "frequency"."""

    grid: GridSpec
    values: np.ndarray
    space: str = "position"

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {self.values.shape} != grid shape {self.grid.shape}"
            )
        if self.space not in ("position", "frequency"):
            raise ValueError("space must be 'position' or 'frequency'")

    def l2(self) -> float:
        """Grid estimate of the continuous L2 norm."""
        return float(
            np.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.cell_volume())
        )


def _fft_order_wavenumbers(grid: GridSpec) -> list[np.ndarray]:
    return [
        2.0 * np.pi * np.fft.fftfreq(n, d=d)
        for n, d in zip(grid.shape, grid.spacing)
    ]


def field_fft(field: ComplexField) -> ComplexField:
    """Continuous-FT estimate of a position-space field."""
    if field.space != "position":
        raise ValueError("field_fft expects a position-space field")
    grid = field.grid
    out = np.fft.fftn(field.values)
    for axis, (k, x0) in enumerate(zip(_fft_order_wavenumbers(grid), grid.origin)):
        shape = [1] * grid.ndim
        shape[axis] = -1
        out = out * np.exp(-1j * k * x0).reshape(shape)
    out *= grid.cell_volume()
    out = np.fft.fftshift(out)
    return ComplexField(grid=grid.fourier_dual(), values=out, space="frequency")


def field_ifft(field: ComplexField, position_grid: GridSpec) -> ComplexField:
    """Inverse of ``field_fft`` back onto the originating position grid."""
    if field.space != "frequency":
        raise ValueError("field_ifft expects a frequency-space field")
    dual = position_grid.fourier_dual()
    if dual.shape != field.grid.shape or not np.allclose(
        dual.spacing, field.grid.spacing
    ):
        raise ValueError("position grid is not the dual of the frequency grid")
    vals = np.fft.ifftshift(field.values)
    for axis, (k, x0) in enumerate(
        zip(_fft_order_wavenumbers(position_grid), position_grid.origin)
    ):
        shape = [1] * position_grid.ndim
        shape[axis] = -1
        vals = vals * np.exp(1j * k * x0).reshape(shape)
    out = np.fft.ifftn(vals) / position_grid.cell_volume()
    return ComplexField(grid=position_grid, values=out, space="position")


# ---------------------------------------------------------------------------
# plain-text field I/O (2D only): CSV with one row per grid point and an 8-bit
# PGM magnitude picture. Floats use repr() so rereading reproduces the exact
# binary values and identical configs give byte-identical files.


def write_field_csv(path, field: ComplexField) -> None:
    if field.grid.ndim != 2:
        raise ValueError("CSV field output is defined for 2D grids")
    names = ("x", "y") if field.space == "position" else ("kx", "ky")
    xs, ys = field.grid.mesh()
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(
            "# origin={!r},{!r} spacing={!r},{!r} shape={},{} space={}\n".format(
                float(field.grid.origin[0]),
                float(field.grid.origin[1]),
                float(field.grid.spacing[0]),
                float(field.grid.spacing[1]),
                field.grid.shape[0],
                field.grid.shape[1],
                field.space,
            )
        )
        fh.write(f"{names[0]},{names[1]},re,im,abs\n")
        flat = zip(xs.ravel(), ys.ravel(), field.values.ravel())
        for x, y, v in flat:
            fh.write(
                f"{float(x)!r},{float(y)!r},"
                f"{float(v.real)!r},{float(v.imag)!r},{float(abs(v))!r}\n"
            )


def read_field_csv(path) -> ComplexField:
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline()
        if not header.startswith("#"):
            raise ValueError("field CSV must start with a '# origin=...' line")
        meta = dict(item.split("=", 1) for item in header[1:].split())
        fh.readline()  # column names
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    origin = tuple(float(v) for v in meta["origin"].split(","))
    spacing = tuple(float(v) for v in meta["spacing"].split(","))
    shape = tuple(int(v) for v in meta["shape"].split(","))
    grid = GridSpec(origin=origin, spacing=spacing, shape=shape)
    values = (data[:, 2] + 1j * data[:, 3]).reshape(shape)
    return ComplexField(grid=grid, values=values, space=meta["space"])


def write_pgm(path, field: ComplexField) -> None:
    """8-bit binary PGM of |field| normalized to its peak."""
    if field.grid.ndim != 2:
        raise ValueError("PGM output is defined for 2D grids")
    mag = np.abs(field.values)
    peak = mag.max()
    if peak > 0:
        mag = mag / peak
    # rows scan y top-to-bottom, columns scan x left-to-right
    img = np.round(255.0 * mag.T[::-1]).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii"))
        fh.write(img.tobytes())
