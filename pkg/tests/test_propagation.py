import math
import unittest

import numpy as np
from scipy.constants import Boltzmann, speed_of_light

from mmwave_lab.errors import DomainError
from mmwave_lab.propagation import (PathConditions, absorption_attenuation, los_gain, los_received_power,
                                    molecular_noise_psd, path_loss_db, reradiated_gain, reradiated_power,
                                    sky_noise_psd, spreading_attenuation, total_attenuation, total_gain)

K_60GHZ = 2.7e-2


class TestAttenuation(unittest.TestCase):

    def test_free_space_at_60_ghz(self):
        """Test 60 GHz over 50 m matches the free-space path-loss formula"""
        attenuation = spreading_attenuation(60e9, 50.0)
        self.assertAlmostEqual(attenuation / 1.579e10, 1.0, places=2)
        self.assertAlmostEqual(10 * math.log10(attenuation), 101.98, delta=0.02)
        expected_db = 20 * math.log10(4 * math.pi * 50.0 * 60e9 / speed_of_light)
        self.assertAlmostEqual(10 * math.log10(attenuation), expected_db, places=10)

    def test_unit_gain_distance(self):
        """Test the distance c / (4 pi f) has unit attenuation"""
        self.assertAlmostEqual(spreading_attenuation(60e9, speed_of_light / (4 * math.pi * 60e9)), 1.0, places=12)

    def test_square_law(self):
        """Test doubling distance quadruples attenuation"""
        self.assertAlmostEqual(spreading_attenuation(60e9, 100.0) / spreading_attenuation(60e9, 50.0), 4.0, places=12)

    def test_absorption_attenuation(self):
        """Test exp(k d) values and composition over distance"""
        self.assertEqual(absorption_attenuation(PathConditions(60e9, 50.0, 0.0)), 1.0)
        at_50 = absorption_attenuation(PathConditions(60e9, 50.0, K_60GHZ))
        self.assertAlmostEqual(at_50, 3.857, places=3)
        at_100 = absorption_attenuation(PathConditions(60e9, 100.0, K_60GHZ))
        self.assertAlmostEqual(at_100 / at_50**2, 1.0, places=12)

    def test_total_attenuation_and_db(self):
        """Test total attenuation is the product and path loss its dB value"""
        conditions = PathConditions(60e9, 50.0, K_60GHZ)
        total = total_attenuation(conditions)
        self.assertAlmostEqual(total / (spreading_attenuation(60e9, 50.0) * math.exp(1.35)), 1.0, places=12)
        self.assertAlmostEqual(path_loss_db(conditions), 10 * math.log10(total), places=10)

    def test_invalid_conditions(self):
        """Test non-physical frequency, distance and absorption are rejected"""
        with self.assertRaises(DomainError):
            PathConditions(0.0, 50.0)
        with self.assertRaises(DomainError):
            PathConditions(60e9, -1.0)
        with self.assertRaises(DomainError):
            PathConditions(60e9, 50.0, -1e-3)


class TestPower(unittest.TestCase):

    def test_los_received_power(self):
        """Test LoS power at 60 GHz and 50 m with and without absorption"""
        vacuum = los_received_power(1.0, PathConditions(60e9, 50.0))
        self.assertAlmostEqual(vacuum / 6.33e-11, 1.0, places=2)
        absorbed = los_received_power(1.0, PathConditions(60e9, 50.0, K_60GHZ))
        self.assertAlmostEqual(absorbed / 1.64e-11, 1.0, places=2)
        self.assertEqual(los_received_power(0.0, PathConditions(60e9, 50.0)), 0.0)

    def test_reradiated_power(self):
        """Test re-radiated power is zero in vacuum and saturates at the spread-only budget"""
        self.assertEqual(reradiated_power(1.0, PathConditions(60e9, 50.0, 0.0)), 0.0)
        value = reradiated_power(1.0, PathConditions(60e9, 50.0, K_60GHZ))
        self.assertAlmostEqual(value / 4.69e-11, 1.0, places=2)
        saturated = reradiated_power(1.0, PathConditions(60e9, 50.0, 10.0))
        self.assertAlmostEqual(saturated * spreading_attenuation(60e9, 50.0), 1.0, places=12)

    def test_power_matches_gains(self):
        """Test power formulas equal squared gain magnitudes times transmit power"""
        conditions = PathConditions(73e9, 42.0, 0.013)
        self.assertAlmostEqual(
            los_received_power(2.0, conditions) / (2.0 * abs(los_gain(conditions)) ** 2), 1.0, places=12
        )
        self.assertAlmostEqual(
            reradiated_power(2.0, conditions) / (2.0 * abs(reradiated_gain(conditions, 0.3)) ** 2), 1.0, places=12
        )

    def test_negative_power(self):
        """Test negative transmit power is rejected"""
        with self.assertRaises(DomainError):
            los_received_power(-1.0, PathConditions(60e9, 50.0))


class TestNoise(unittest.TestCase):

    def test_sky_noise(self):
        """Test the distance-limit sky noise and its k = 0 case"""
        self.assertEqual(sky_noise_psd(60e9, 0.0), 0.0)
        expected = Boltzmann * 296.0 * (speed_of_light / (math.sqrt(4 * math.pi) * 6e10)) ** 2
        self.assertAlmostEqual(sky_noise_psd(60e9, K_60GHZ) / expected, 1.0, places=12)
        self.assertAlmostEqual(sky_noise_psd(120e9, K_60GHZ) / sky_noise_psd(60e9, K_60GHZ), 0.25, places=12)

    def test_molecular_noise(self):
        """Test the total noise PSD is sky plus self-induced noise"""
        conditions = PathConditions(60e9, 50.0, K_60GHZ)
        noise = molecular_noise_psd(1.0, conditions)
        self.assertEqual(noise.sky, sky_noise_psd(60e9, K_60GHZ))
        self.assertEqual(noise.self_induced, reradiated_power(1.0, conditions))
        self.assertEqual(noise.total, noise.sky + noise.self_induced)


class TestGains(unittest.TestCase):

    def test_los_gain_real_at_whole_wavelengths(self):
        """Test an integer number of wavelengths gives a real positive gain"""
        frequency = 60e9
        distance = 10000 * speed_of_light / frequency
        gain = los_gain(PathConditions(frequency, distance))
        self.assertAlmostEqual(gain.real / (speed_of_light / (4 * math.pi * frequency * distance)), 1.0, places=9)
        self.assertLess(abs(gain.imag), 1e-9 * abs(gain))

    def test_los_gain_consistency(self):
        """Test |H_LoS|^2 times both attenuations is one"""
        conditions = PathConditions(60e9, 50.0, K_60GHZ)
        self.assertAlmostEqual(abs(los_gain(conditions)) ** 2 * total_attenuation(conditions), 1.0, places=12)
        self.assertAlmostEqual(abs(los_gain(conditions)) / 4.05e-6, 1.0, places=2)

    def test_reradiated_gain_limits(self):
        """Test zero re-radiation in vacuum and spread-only magnitude at saturation"""
        self.assertEqual(abs(reradiated_gain(PathConditions(60e9, 50.0, 0.0), 0.7)), 0.0)
        saturated = abs(reradiated_gain(PathConditions(60e9, 50.0, 50.0), 0.2))
        self.assertAlmostEqual(saturated / (speed_of_light / (4 * math.pi * 60e9 * 50.0)), 1.0, places=12)
        with self.assertRaises(DomainError):
            reradiated_gain(PathConditions(60e9, 50.0, 0.1), 1.0)

    def test_power_partition(self):
        """Test LoS and re-radiated powers partition the spread-only budget"""
        rng = np.random.default_rng(11)
        for _ in range(500):
            conditions = PathConditions(rng.uniform(50e9, 200e9), rng.uniform(1.0, 500.0), rng.uniform(0.0, 2.0))
            spread = (speed_of_light / (4 * math.pi * conditions.frequency * conditions.distance)) ** 2
            partition = abs(los_gain(conditions)) ** 2 + abs(reradiated_gain(conditions, rng.uniform())) ** 2
            self.assertLessEqual(abs(partition - spread), 1e-12 * spread)

    def test_vectorised_partition(self):
        """Test gains accept arrays elementwise"""
        k = np.array([0.0, 1e-3, 0.1, 3.0])
        conditions = PathConditions(60e9, 50.0, k)
        partition = np.abs(los_gain(conditions)) ** 2 + np.abs(reradiated_gain(conditions, 0.5)) ** 2
        spread = (speed_of_light / (4 * math.pi * 60e9 * 50.0)) ** 2
        np.testing.assert_allclose(partition, spread, rtol=1e-12)

    def test_monotone_in_k(self):
        """Test LoS magnitude falls and re-radiated magnitude rises with k"""
        k = np.logspace(-6, 1, 50)
        conditions = PathConditions(60e9, 50.0, k)
        self.assertTrue(np.all(np.diff(np.abs(los_gain(conditions))) < 0))
        self.assertTrue(np.all(np.diff(np.abs(reradiated_gain(conditions, 0.0))) > 0))

    def test_total_gain(self):
        """Test vacuum equality, constructive alignment and triangle bounds"""
        vacuum = PathConditions(60e9, 50.0)
        self.assertEqual(total_gain(vacuum, 0.4), los_gain(vacuum))

        conditions = PathConditions(60e9, 50.0, K_60GHZ)
        los = los_gain(conditions)
        aligned_beta = (np.angle(los) / (2 * math.pi)) % 1.0
        aligned = total_gain(conditions, aligned_beta)
        magnitude_sum = abs(los) + abs(reradiated_gain(conditions, 0.0))
        self.assertAlmostEqual(abs(aligned) / magnitude_sum, 1.0, places=9)

        for beta in np.linspace(0.0, 0.99, 25):
            h = abs(total_gain(conditions, beta))
            lower = abs(abs(los) - abs(reradiated_gain(conditions, beta)))
            self.assertLessEqual(lower, h * (1 + 1e-12))
            self.assertLessEqual(h, magnitude_sum * (1 + 1e-12))

    def test_mean_power_over_beta(self):
        """Test averaging |H|^2 over uniform beta recovers the spread-only power"""
        conditions = PathConditions(60e9, 50.0, K_60GHZ)
        betas = np.random.default_rng(3).uniform(0.0, 1.0, 10**6)
        mean_power = np.mean(np.abs(total_gain(conditions, betas)) ** 2)
        spread = (speed_of_light / (4 * math.pi * 60e9 * 50.0)) ** 2
        self.assertLess(abs(mean_power / spread - 1.0), 0.005)


if __name__ == "__main__":
    unittest.main()
