#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "inferlab/interaction.hpp"

namespace inferlab {

/// Largest n with {0, ..., n-1} contained in outline(D).
std::size_t prefix_length(const DataSet& d);

/// ((i, [i in pos(D)]) : i < prefix_length(D)), the longest canonical-informant
/// prefix that D determines.
DataSequence canonical_prefix(const DataSet& d);

/// Sd learner D -> h(canonical_prefix(D)). Outputs are h's hypotheses
/// unchanged, labels included.
Learner to_set_driven(const Learner& h);

/// Extension (W_e u pos(D)) \ neg(D) under a label derived from (e, D).
Hypothesis patch(const Hypothesis& e, const DataSet& d);

/// sigma -> patch(h(sigma), content(sigma)). Keeps the Sd interface of an Sd
/// learner; any other learner becomes a G learner.
Learner patched_learner(const Learner& h);

/// Globally consistent, weakly monotone G learner that unions pos(sigma)
/// with every stage-consistent part of h(sigma) and of its own earlier
/// conjectures on proper prefixes of sigma.
Learner cons_wmon_wrapper(const Learner& h);

/// G learner that passes h's conjecture on content(sigma) through while it
/// is consistent, and falls back to pos(sigma) or N \ neg(sigma) once it is
/// provably wrong. A learner that is not set-driven is first made so with
/// to_set_driven.
Learner dual_wmon_poison(const Learner& h);

/// Four-case consistent G learner evaluated on the shortest prefix of sigma
/// with the same content.
Learner cons_wmon_fourcase(const Learner& h);

/// `to_sd, patch, cons_wmon, dual_wmon_poison, cons_wmon_fourcase`
const std::vector<std::string>& combinator_ids();
Learner apply_combinator(std::string_view id, const Learner& h);
Learner apply_pipeline(const Learner& base, const std::vector<std::string>& ids);

}  // namespace inferlab
