#pragma once

#include <map>
#include <string>
#include <vector>

#include "hpx/engine.hpp"
#include "hpx/model.hpp"

namespace hpx {

struct RuleTemplateInstance {
  std::string template_id;  // T1..T8b, O1/O2 (pruning), F-line-NN[a-z]
  std::string text;         // one terminated statement
  bool is_fact = false;
};

struct EmitOptions {
  bool optimize = false;  // holds/1 for statics plus pruning constraints
};

/// Domain dependent part, ordered facts first, then by template id and text.
/// Throws DomainError if the domain does not validate.
std::vector<RuleTemplateInstance> emit_domain_rules(const PlanningDomain& d, EmitOptions opts = {});

/// Domain independent part in listing order. Throws std::invalid_argument
/// if max_steps < 1 or max_branches < 0.
std::vector<RuleTemplateInstance> emit_foundational_theory(int max_steps, int max_branches, PlanMode mode);

/// One statement per line followed by "  % <template id>".
std::string emit_program(const PlanningDomain& d, int max_steps, int max_branches, PlanMode mode,
                         EmitOptions opts = {});

std::map<std::string, std::size_t> template_counts(const std::vector<RuleTemplateInstance>& rules);

/// Number of ground rule instances a naive grounder would produce: facts
/// over hasEP/hasEff/hasPC/hasNC/hasKP/fluent/action are joined exactly,
/// every other variable ranges over its whole sort.
std::size_t estimate_ground_rules(const PlanningDomain& d, int max_steps, int max_branches, PlanMode mode,
                                  EmitOptions opts = {});

}  // namespace hpx
