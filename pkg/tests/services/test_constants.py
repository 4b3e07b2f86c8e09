import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from models.physics import CODATA_2018, GuidedPhoton, MassiveParticle, RestMass
from services.constants import (
    CONSTANTS,
    compton_wavelength,
    effective_photon_mass,
    electron,
    ghz_angular_to_rad_s,
    guided_photon,
    metres_to_mm,
    mm_to_metres,
    particle_from_mass,
)
from services.errors import DomainError


class TestPhysicalConstants:
    """CODATA 2018 values compiled into the toolkit"""

    def test_codata_values(self):
        """Test the fixed constant values"""
        assert CONSTANTS.c == 2.99792458e8
        assert CONSTANTS.hbar == 1.054571817e-34
        assert CONSTANTS.m_electron == 9.1093837015e-31

    def test_constants_are_immutable(self):
        """Test that the shared constants cannot be reassigned"""
        with pytest.raises(ValidationError):
            CODATA_2018.c = 3.0e8

    def test_constants_must_be_positive(self):
        """Test that non-positive constants are rejected"""
        with pytest.raises(ValidationError):
            type(CODATA_2018)(c=0.0, hbar=1.0, m_electron=1.0)


class TestComptonWavelength:
    """Reduced Compton wavelength hbar/(m c)"""

    def test_electron_value(self):
        """Test the electron value in metres and millimetres"""
        lam = compton_wavelength(CONSTANTS.m_electron)
        assert lam == pytest.approx(3.8616e-13, rel=1e-4)
        assert metres_to_mm(lam) == pytest.approx(3.87e-10, rel=5e-3)

    def test_unit_identity(self):
        """Test that a mass of hbar/c (numerically) gives one metre"""
        assert compton_wavelength(CONSTANTS.hbar / CONSTANTS.c) == pytest.approx(1.0, rel=1e-15)

    def test_inverse_proportionality(self):
        """Test that doubling the mass halves the wavelength"""
        single = compton_wavelength(CONSTANTS.m_electron)
        double = compton_wavelength(2.0 * CONSTANTS.m_electron)
        assert double == pytest.approx(0.5 * single, rel=1e-15)

    def test_strictly_decreasing_in_mass(self):
        """Test antitonicity over a sampled mass grid"""
        masses = np.geomspace(1e-45, 1e-20, 200)
        values = np.array([compton_wavelength(float(m)) for m in masses])
        assert np.all(np.diff(values) < 0.0)

    @pytest.mark.parametrize("mass", [0.0, -1.0e-30])
    def test_non_positive_mass(self, mass):
        """Test domain error for non-positive mass"""
        with pytest.raises(DomainError):
            compton_wavelength(mass)


class TestEffectivePhotonMass:
    """Effective mass hbar omega_c / c^2 of guided photons"""

    def test_reference_cutoff(self):
        """Test the mass at 9.49e9 rad/s"""
        assert effective_photon_mass(9.49e9) == pytest.approx(1.1135e-41, rel=1e-3)

    def test_unit_identity(self):
        """Test that omega_c = c^2/hbar (numerically) gives one kilogram"""
        omega_c = CONSTANTS.c**2 / CONSTANTS.hbar
        assert effective_photon_mass(omega_c) == pytest.approx(1.0, rel=1e-15)

    def test_guided_bound_in_mm(self):
        """Test that the guided photon's Compton wavelength is about 31.6 mm"""
        lam = compton_wavelength(effective_photon_mass(9.49e9))
        assert metres_to_mm(lam) == pytest.approx(31.6, rel=5e-3)

    @given(st.floats(min_value=3.0, max_value=20.0))
    @settings(max_examples=200)
    def test_round_trip_to_c_over_omega(self, exponent):
        """Test compton_wavelength(effective_photon_mass(w)) == c/w over 1e3..1e20 rad/s"""
        omega = 10.0**exponent
        lam = compton_wavelength(effective_photon_mass(omega))
        assert math.isclose(lam, CONSTANTS.c / omega, rel_tol=1e-12)

    @pytest.mark.parametrize("omega_c", [0.0, -9.49e9])
    def test_non_positive_cutoff(self, omega_c):
        """Test domain error for non-positive cutoff"""
        with pytest.raises(DomainError):
            effective_photon_mass(omega_c)


class TestParticles:
    """MassiveParticle factories and their consistency checks"""

    def test_electron(self):
        """Test the electron factory"""
        particle = electron()
        assert particle.mass == CONSTANTS.m_electron
        assert isinstance(particle.origin, RestMass)

    def test_guided_photon(self):
        """Test the guided photon carries its cutoff and c/omega_c"""
        particle = guided_photon(9.49e9)
        assert isinstance(particle.origin, GuidedPhoton)
        assert particle.origin.omega_c == 9.49e9
        assert particle.compton_wavelength == pytest.approx(CONSTANTS.c / 9.49e9, rel=1e-12)

    def test_particle_from_mass(self):
        """Test building a particle from an arbitrary mass"""
        particle = particle_from_mass(2.0 * CONSTANTS.m_electron)
        assert particle.compton_wavelength == pytest.approx(
            0.5 * electron().compton_wavelength, rel=1e-15
        )

    def test_inconsistent_wavelength_rejected(self):
        """Test that a stored wavelength disagreeing with hbar/(m c) is rejected"""
        with pytest.raises(ValidationError):
            MassiveParticle(mass=CONSTANTS.m_electron, compton_wavelength=1e-12)

    def test_inconsistent_guided_mass_rejected(self):
        """Test that a guided photon whose mass does not match its cutoff is rejected"""
        mass = CONSTANTS.m_electron
        with pytest.raises(ValidationError):
            MassiveParticle(
                mass=mass,
                compton_wavelength=compton_wavelength(mass),
                origin=GuidedPhoton(omega_c=9.49e9),
            )


class TestConversions:
    """Boundary unit conversions"""

    def test_ghz_angular_has_no_two_pi(self):
        """Test that the GHz-angular reading only scales by 1e9"""
        assert ghz_angular_to_rad_s(9.49) == pytest.approx(9.49e9, rel=1e-15)

    def test_millimetres(self):
        """Test metre/millimetre conversions"""
        assert metres_to_mm(0.0316) == pytest.approx(31.6)
        assert mm_to_metres(31.6) == pytest.approx(0.0316)
