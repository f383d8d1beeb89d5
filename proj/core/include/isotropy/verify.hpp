#ifndef ISOTROPY_VERIFY_HPP
#define ISOTROPY_VERIFY_HPP

#include <cstdint>
#include <optional>

#include "isotropy/engine.hpp"
#include "isotropy/normal_forms.hpp"
#include "isotropy/oracle.hpp"

namespace isotropy {

/// Brute-force verification of a model against the ambient data (A, H and,
/// in the nilpotent case, R): membership of each sample, closure on sample
/// pairs, and dimension agreement via the exact nullspace oracle. Every
/// check is an exact matrix identity built from core arithmetic only.
///
/// `corrupt_first_sample` perturbs one entry before checking, as a
/// falsifiability probe: the report must then fail.
VerificationReport verify_against(const CentralizerModel& model, const ExactMatrix& a, const ExactMatrix& h,
                                  const std::optional<ExactMatrix>& r, int samples, std::uint64_t seed,
                                  bool corrupt_first_sample = false, int oracle_max_n = 16);

VerificationReport verify_model(const CentralizerModel& model, const NormalFormBundle& bundle, int samples,
                                std::uint64_t seed, bool corrupt_first_sample = false, int oracle_max_n = 16);

/// Mixed variant: direct-sum model against the direct-sum normal form.
VerificationReport verify_mixed(const MixedCentralizerModel& model, const MixedNormalForm& mixed, int samples,
                                std::uint64_t seed, bool corrupt_first_sample = false, int oracle_max_n = 16);

} // namespace isotropy

#endif
