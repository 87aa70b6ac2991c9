"""Exception types raised by the library."""


class AdmissibilityError(ValueError):
    """A frame constant violates one of the defining inequalities."""


class DualConstructionError(RuntimeError):
    """The reconstruction partner cannot be built for the given profile."""


class NyquistError(ValueError):
    """A dilation level exceeds what the grid resolution can represent."""

    def __init__(self, msg, max_level=None):
        super().__init__(msg)
        self.max_level = max_level


class BandSupportError(ValueError):
    """A function carries spectral energy outside the required band."""

    def __init__(self, msg, out_of_band_energy=None):
        super().__init__(msg)
        self.out_of_band_energy = out_of_band_energy


class WindowError(ValueError):
    """A coefficient window is inconsistent with the grid geometry."""
