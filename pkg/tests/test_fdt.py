import cmath
import math

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from tlcasimir import (
    HBAR,
    K_B,
    Capacitor,
    Inductor,
    LineSpec,
    Mirror,
    MirrorFlavor,
    Parallel,
    Resistor,
    Series,
    Short,
    ThermalSpec,
    bose_weight,
    cavity_density_closed_form,
    cavity_density_integrand,
    cavity_wave_currents,
    charge_and_current_spectrum,
    energy_density_dual,
    eval_impedance,
    fdt_energy_density_integrand,
    free_density_integrand,
    input_spectrum_line,
    input_spectrum_resistor,
    nyquist_current_spectrum,
    reflect_embedded,
    reflect_termination,
)

from _helpers import random_tree

LINE = LineSpec(z0=50.0, c=2.998e8)
T0 = ThermalSpec(0.0)


class TestNyquist:
    def test_zero_temperature_positive_branch(self):
        s = nyquist_current_spectrum(50.0, 1e9, T0)
        assert s.value == pytest.approx(2 * HBAR * 1e9 / 50.0)

    def test_zero_temperature_negative_branch(self):
        assert nyquist_current_spectrum(50.0, -1e9, T0).value == 0.0

    def test_classical_expansion(self):
        """beta hbar omega = 1e-6: S*R/(2 k_B T) = 1 + x/2 + x^2/12 + O(x^4)."""
        temperature = 300.0
        x = 1e-6
        omega = x * K_B * temperature / HBAR
        s = nyquist_current_spectrum(50.0, omega, ThermalSpec(temperature))
        ratio = s.value * 50.0 / (2 * K_B * temperature)
        assert ratio == pytest.approx(1 + x / 2 + x * x / 12, rel=1e-12)

    def test_nonpositive_resistance_rejected(self):
        with pytest.raises(ValueError):
            nyquist_current_spectrum(0.0, 1e9, T0)
        with pytest.raises(ValueError):
            nyquist_current_spectrum(-5.0, 1e9, T0)

    def test_positive_both_branches_at_finite_temperature(self):
        th = ThermalSpec(4.2)
        for omega in (1e8, -1e8, 1e11, -1e11):
            assert nyquist_current_spectrum(50.0, omega, th).value >= 0.0


class TestChargeAndCurrentSpectrum:
    def test_resistor_reproduces_nyquist(self):
        th = ThermalSpec(77.0)
        _, s_i = charge_and_current_spectrum(Resistor(120.0), 3e9, th)
        assert s_i.value == pytest.approx(
            nyquist_current_spectrum(120.0, 3e9, th).value, rel=1e-14
        )

    def test_purely_reactive_gives_zero(self):
        s_q, s_i = charge_and_current_spectrum(Inductor(1e-9), 1e9, T0)
        assert s_q.value == 0.0 and s_i.value == 0.0

    def test_series_rc_against_direct_substitution(self):
        """S_I = omega^2 * 2 hbar Re[Z]/(omega |Z|^2) * bose for Z = R + 1/(i omega C)...
        evaluated independently from the closed-form Z."""
        r_ohms, farads, omega = 35.0, 2e-12, 5e9
        th = ThermalSpec(10.0)
        _, s_i = charge_and_current_spectrum(
            Series((Resistor(r_ohms), Capacitor(farads))), omega, th
        )
        z = r_ohms + 1j / (omega * farads)
        x = HBAR * omega / (K_B * 10.0)
        bose = 1.0 / (1.0 - math.exp(-x))
        expected = omega**2 * 2 * HBAR * z.real / (omega * abs(z) ** 2) * bose
        assert s_i.value == pytest.approx(expected, rel=1e-12)

    def test_charge_current_relation(self):
        s_q, s_i = charge_and_current_spectrum(Resistor(10.0), 2e9, T0)
        assert s_i.value == pytest.approx((2e9) ** 2 * s_q.value)


class TestInputSpectrumEquivalence:
    def test_matched_case_value(self):
        # R = Z0, T = 0, omega > 0: hbar omega Z0 / 2
        omega = 7e9
        s = input_spectrum_line(50.0, LINE, omega, T0)
        assert s.value == pytest.approx(HBAR * omega * 50.0 / 2)

    def test_short_and_open_inject_nothing(self):
        # both limits vanish linearly in R (resp. 1/R)
        matched = input_spectrum_resistor(50.0, LINE, 1e9, T0).value
        assert input_spectrum_resistor(1e-9, LINE, 1e9, T0).value <= 1e-9 * matched
        assert input_spectrum_resistor(1e12, LINE, 1e9, T0).value <= 1e-8 * matched

    @given(
        st.floats(min_value=0.1, max_value=1e5),
        st.floats(min_value=1e3, max_value=1e12),
        st.sampled_from([0.0, 0.05, 4.2, 300.0]),
    )
    def test_equivalence_everywhere(self, r_ohms, omega, temperature):
        """The two derivations give the same spectrum for every input."""
        th = ThermalSpec(temperature)
        a = input_spectrum_resistor(r_ohms, LINE, omega, th).value
        b = input_spectrum_line(r_ohms, LINE, omega, th).value
        assert b == pytest.approx(a, rel=1e-14)

    def test_detailed_balance(self):
        """S(-omega)/S(omega) = e^(-beta hbar omega) at T > 0."""
        th = ThermalSpec(1.0)
        omega = 2e10
        ratio = (
            input_spectrum_line(75.0, LINE, -omega, th).value
            / input_spectrum_line(75.0, LINE, omega, th).value
        )
        assert ratio == pytest.approx(math.exp(-HBAR * omega / (K_B * 1.0)), rel=1e-10)


class TestCavityWaveCurrents:
    def test_matched_ends_no_multiple_reflections(self):
        m = Mirror(r=0, t=1, flavor=MirrorFlavor.TERMINATING, omega=1.0)
        kl = 0.8
        amps = cavity_wave_currents(2.0, 3.0, m, m, kl)
        assert amps.i_plus_0 == pytest.approx(1.0)
        assert amps.i_minus_0 == pytest.approx(-1.5 * cmath.exp(1j * kl))

    def test_forward_only_when_far_source_silent(self):
        m1 = Mirror(r=0.4, t=1.4, flavor=MirrorFlavor.TERMINATING, omega=1.0)
        m2 = Mirror(r=0, t=1, flavor=MirrorFlavor.TERMINATING, omega=1.0)
        amps = cavity_wave_currents(1.0, 0.0, m1, m2, 0.5)
        assert amps.i_minus_0 == 0.0

    def test_terminating_flavor_required(self):
        m = Mirror(r=0, t=1, flavor=MirrorFlavor.EMBEDDED, omega=1.0)
        with pytest.raises(ValueError, match="terminating"):
            cavity_wave_currents(1.0, 1.0, m, m, 0.5)

    def test_kirchhoff_relations_satisfied(self):
        """Substituting the solution back into the node equations
        I_N1 = I+(0)(1+Z0/Z1) + I-(0)(1-Z0/Z1)
        I_N2 = -I+(l)(1-Z0/Z2) - I-(l)(1+Z0/Z2)
        leaves residuals at rounding level."""
        rng = np.random.default_rng(23)
        worst = 0.0
        count = 0
        while count < 300:
            z1_expr = random_tree(rng, depth=2, allow_degenerate=False)
            z2_expr = random_tree(rng, depth=2, allow_degenerate=False)
            omega = 10 ** rng.uniform(6, 11)
            z1 = eval_impedance(z1_expr, omega)
            z2 = eval_impedance(z2_expr, omega)
            if z1.is_open or z2.is_open:
                continue
            za, zb = z1.value(), z2.value()
            if not (1.0 < abs(za) < 1e5 and 1.0 < abs(zb) < 1e5):
                continue
            m1 = reflect_termination(z1_expr, LINE, omega)
            m2 = reflect_termination(z2_expr, LINE, omega)
            kl = rng.uniform(0.05, 6.0)
            if abs(1 - m1.r * m2.r * cmath.exp(2j * kl)) < 0.05:
                continue
            i_n1 = complex(rng.normal(), rng.normal())
            i_n2 = complex(rng.normal(), rng.normal())
            amps = cavity_wave_currents(i_n1, i_n2, m1, m2, kl)
            ip, im = amps.i_plus_0, amps.i_minus_0
            res1 = abs(ip * (1 + LINE.z0 / za) + im * (1 - LINE.z0 / za) - i_n1)
            ipl = ip * cmath.exp(1j * kl)
            iml = im * cmath.exp(-1j * kl)
            res2 = abs(-ipl * (1 - LINE.z0 / zb) - iml * (1 + LINE.z0 / zb) - i_n2)
            worst = max(worst, res1, res2)
            count += 1
        assert worst <= 1e-13


class TestEnergyDensity:
    def test_qed_configuration_matches_scattering_route(self):
        """Embedded lossless mirrors with matched resistances R1 = R2 = Z0
        reproduce the scattering-route cavity density after folding."""
        l = 0.01
        omega = 2 * math.pi * 4e9
        z1, z2 = Inductor(2e-9), Capacitor(3e-13)
        folded = 0.0
        for w in (omega, -omega):
            m1 = reflect_embedded(z1, LINE, w)
            m2 = reflect_embedded(z2, LINE, w)
            folded += fdt_energy_density_integrand(w, m1, m2, l, LINE, T0, LINE.z0, LINE.z0)
        folded *= LINE.c
        m1 = reflect_embedded(z1, LINE, omega)
        m2 = reflect_embedded(z2, LINE, omega)
        qed_value = cavity_density_integrand(omega / LINE.c, m1, m2, l, LINE, T0)
        assert folded == pytest.approx(qed_value, rel=1e-12)

    def test_no_mirrors_reduces_to_free_line(self):
        l = 0.01
        omega = 3e9
        m = Mirror(r=0, t=1, flavor=MirrorFlavor.TERMINATING, omega=omega)
        folded = LINE.c * (
            fdt_energy_density_integrand(omega, m, m, l, LINE, T0, LINE.z0, LINE.z0)
            + fdt_energy_density_integrand(-omega, m, m, l, LINE, T0, LINE.z0, LINE.z0)
        )
        assert folded == pytest.approx(free_density_integrand(omega / LINE.c, LINE, T0), rel=1e-13)

    def test_dual_forms_agree_for_lossy_terminations(self):
        """Noise-driven form vs closed form for dissipative terminations."""
        l = 0.01
        z1 = Series((Resistor(30.0), Capacitor(1e-12)))
        z2 = Parallel((Resistor(200.0), Inductor(4e-9)))
        rng = np.random.default_rng(29)
        for _ in range(100):
            omega = 10 ** rng.uniform(7, 11)
            folded, closed = energy_density_dual(z1, z2, LINE, l, omega, T0)
            assert folded == pytest.approx(closed, rel=1e-11)

    def test_rc_vs_short(self):
        l = 0.01
        z1 = Series((Resistor(25.0), Capacitor(1e-12)))
        z2 = Short()
        folded, closed = energy_density_dual(z1, z2, LINE, l, 2 * math.pi * 1e9, T0)
        assert folded == pytest.approx(closed, rel=1e-11)

    def test_closed_form_matches_general_formula(self):
        omega = 5e9
        m1 = reflect_termination(Series((Resistor(20.0), Inductor(1e-9))), LINE, omega)
        m2 = reflect_termination(Resistor(80.0), LINE, omega)
        k = omega / LINE.c
        value = cavity_density_closed_form(k, m1, m2, 0.01, LINE, T0)
        g = m1.r * m2.r * cmath.exp(2j * k * 0.01)
        expected = (
            HBAR * LINE.c * k / (2 * math.pi)
            * (1 - (abs(m1.r) * abs(m2.r)) ** 2)
            / abs(1 - g) ** 2
        )
        assert value == pytest.approx(expected, rel=1e-14)


def test_bose_weight_branches():
    th = ThermalSpec(2.0)
    x = HBAR * 1e10 / (K_B * 2.0)
    assert bose_weight(1e10, th) == pytest.approx(1 / (1 - math.exp(-x)), rel=1e-12)
    assert bose_weight(-1e10, th) == pytest.approx(1 / (1 - math.exp(x)), rel=1e-12)
    assert bose_weight(-1e10, th) < 0  # sign carries the asymmetry
    with pytest.raises(ValueError):
        bose_weight(0.0, th)
