#pragma once

#include <string>

#include "levyhit/levy_model.hpp"

namespace levyhit {

// One computed kernel quantity. lambda tags the resolvent parameter; 0 means
// a lambda -> 0+ limit object (H, K).
struct KernelValue {
    double value = 0.0;
    double error_estimate = 0.0;
    double lambda = 0.0;
};

enum class KWitness { im_sign, nonzero_mean, tail_bound, none };

// Numeric record of which sufficient condition certifies that the compensated
// potential kernel K exists. detail carries the witness scale: the epsilon of
// the Im psi sign check, the mean, or the tail/concentration ratio bound.
struct KExistenceEvidence {
    bool exists = false;
    KWitness witness = KWitness::none;
    double detail = 0.0;
    std::string note;
};

// p(t, x) by Fourier inversion of e^{-t psi}; clamped at 0 against roundoff.
double transition_density(const LevyModel& model, double t, double x);

// u^lambda(x) = (1/2 pi) int Re[e^{-i xi x} / (lambda + psi(xi))] d xi.
// Evaluated as u^lambda(0) - K^lambda(x), whose integrands decay.
KernelValue u_lambda(const LevyModel& model, double lambda, double x);

// kappa = lim_{lambda -> 0+} 1 / u^lambda(0); 0 for recurrent processes.
double kappa(const LevyModel& model);

// K^lambda(x) = u^lambda(0) - u^lambda(x) >= 0.
KernelValue K_lambda(const LevyModel& model, double lambda, double x);

// H^lambda(x) = K^lambda(x) + K^lambda(-x); lambda = 0 gives the potential
// kernel H(x) = (1/pi) int_R (1 - cos x s) Re[1/psi(s)] ds.
KernelValue H_sym(const LevyModel& model, double x, double lambda = 0.0);

// K(x) = (1/pi) int_0^inf Re[(1/psi(s)) (1 - e^{-i x s})] ds. Refuses to run
// unless K_exists_evidence certifies existence.
KernelValue K_compensated(const LevyModel& model, double x);

KExistenceEvidence K_exists_evidence(const LevyModel& model);

// P^x(T_0 = infinity) = kappa * K(-x), clamped to [0, 1]; identically 0 in
// the recurrent case kappa = 0.
double survival_prob_T0(const LevyModel& model, double x);

}  // namespace levyhit
