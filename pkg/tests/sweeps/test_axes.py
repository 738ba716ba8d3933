"""Unit tests for sweep axes (frequency, absorption, antennas) and their registry"""

import unittest

from mmwave_lab.absorption import Atmosphere, find_preset, synthetic_spectra
from mmwave_lab.errors import ConfigError, DomainError
from mmwave_lab.experiments import SweepSpec
from mmwave_lab.geometry import LinkGeometry
from mmwave_lab.mimo import PowerBudget
from mmwave_lab.sweeps.axes import AbsorptionAxis, AntennaCountAxis, FrequencyAxis
from mmwave_lab.sweeps.base import BaseSweepAxis, SweepPoint, SweepVariable
from mmwave_lab.sweeps.registry import SweepAxisRegistry, axis_registry

SNR_20DB = PowerBudget.constant_snr(20.0)


class TestFrequencyAxis(unittest.TestCase):
    """Test cases for FrequencyAxis"""

    def setUp(self):
        self.axis = FrequencyAxis()
        self.atmosphere = Atmosphere(mixture=find_preset("USA model, tropics"), spectra=synthetic_spectra())

    def test_points_follow_atmosphere(self):
        """Test each grid frequency gets its own k"""
        spec = SweepSpec(SweepVariable.FREQUENCY, (55e9, 60e9), LinkGeometry.symmetric(3), SNR_20DB, self.atmosphere)
        points = list(self.axis.points(spec))

        self.assertEqual([p.frequency for p in points], [55e9, 60e9])
        self.assertEqual(points[1].absorption, self.atmosphere.coefficient(60e9))
        self.assertIs(points[0].geometry, spec.geometry)

    def test_required_frequencies(self):
        """Test the whole grid must be covered"""
        spec = SweepSpec(SweepVariable.FREQUENCY, (55e9, 60e9), LinkGeometry.symmetric(3), SNR_20DB, self.atmosphere)
        self.assertEqual(self.axis.required_frequencies(spec), [55e9, 60e9])

    def test_non_positive_frequency(self):
        """Test zero hertz is refused"""
        with self.assertRaises(DomainError):
            self.axis.validate_grid([0.0, 1e9])


class TestAbsorptionAxis(unittest.TestCase):
    """Test cases for AbsorptionAxis"""

    def setUp(self):
        self.axis = AbsorptionAxis()

    def test_grid_overrides_k(self):
        """Test each point uses its grid value as k at the fixed carrier"""
        spec = SweepSpec(SweepVariable.ABSORPTION, (0.0, 1e-3, 1.0), LinkGeometry.symmetric(2), SNR_20DB, frequency=73e9)
        points = list(self.axis.points(spec))

        self.assertEqual([p.absorption for p in points], [0.0, 1e-3, 1.0])
        self.assertTrue(all(p.frequency == 73e9 for p in points))
        self.assertEqual(self.axis.required_frequencies(spec), [])

    def test_negative_k(self):
        """Test negative coefficients are refused"""
        with self.assertRaises(DomainError):
            self.axis.validate_grid([-1e-3, 0.0])


class TestAntennaCountAxis(unittest.TestCase):
    """Test cases for AntennaCountAxis"""

    def setUp(self):
        self.axis = AntennaCountAxis()

    def test_resizes_geometry(self):
        """Test each point resizes both arrays and keeps k fixed"""
        spec = SweepSpec(
            SweepVariable.ANTENNAS, (1, 4, 8), LinkGeometry.symmetric(3, 20.0), SNR_20DB, Atmosphere.constant(2.7e-2)
        )
        points = list(self.axis.points(spec))

        self.assertEqual([p.geometry.shape for p in points], [(1, 1), (4, 4), (8, 8)])
        self.assertTrue(all(p.absorption == 2.7e-2 for p in points))
        self.assertTrue(all(p.geometry.separation == 20.0 for p in points))
        self.assertEqual(self.axis.required_frequencies(spec), [60e9])

    def test_fractional_counts(self):
        """Test non-integer and zero antenna counts are refused"""
        with self.assertRaises(ConfigError):
            self.axis.validate_grid([1, 2.5])
        with self.assertRaises(ConfigError):
            self.axis.validate_grid([0, 1])


class TestSweepAxisRegistry(unittest.TestCase):
    """Test cases for SweepAxisRegistry"""

    def test_default_axes(self):
        """Test the three sweep variables are registered"""
        self.assertEqual(sorted(axis_registry.list_axes()), ["absorption", "antennas", "frequency"])

    def test_lookup_by_enum_or_name(self):
        """Test axes resolve from the enum and from its string value"""
        self.assertIsInstance(axis_registry.get_axis(SweepVariable.FREQUENCY), FrequencyAxis)
        self.assertIsInstance(axis_registry.get_axis("antennas"), AntennaCountAxis)

    def test_unknown_axis(self):
        """Test unknown axes raise a config error"""
        with self.assertRaises(ConfigError):
            axis_registry.get_axis("distance")

    def test_register_custom_axis(self):
        """Test a new axis can be registered on a fresh registry"""

        class SeparationAxis(BaseSweepAxis):
            def __init__(self):
                super().__init__("separation")

            def points(self, spec):
                for distance in spec.grid:
                    geometry = LinkGeometry.symmetric(spec.geometry.shape[0], distance)
                    yield SweepPoint(distance, geometry, spec.frequency, 0.0)

            def required_frequencies(self, spec):
                return []

        registry = SweepAxisRegistry()
        registry.register_axis(SeparationAxis())
        self.assertIn("separation", registry.list_axes())
        self.assertNotIn("separation", axis_registry.list_axes())


if __name__ == "__main__":
    unittest.main()
