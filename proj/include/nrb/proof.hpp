#pragma once

#include <string>
#include <vector>

#include "nrb/ast.hpp"
#include "nrb/errors.hpp"
#include "nrb/eval.hpp"
#include "nrb/model.hpp"

namespace nrb {

enum class RuleName {
  Seq,
  Do,
  Skp,
  Ret,
  Brk,
  Go,
  Throw,
  Let,
  Grd,
  Dsj,
  Frm,
  Lbl,
  Sub,
  Try,
  PreOr,
  PostAnd,
  AssumeOr,
  Conseq,
};

std::string rule_name(RuleName r);
RuleName rule_from_name(const std::string& name);

// One implication instance a rule depends on, kept for reporting.
struct SideCondition {
  std::string description;
  BoolPtr lhs;
  BoolPtr rhs;
};

struct ProofNode {
  RuleName rule;
  Judgement conclusion;
  std::vector<ProofNode> premises;
  std::vector<SideCondition> side_conditions;
};

struct ProofDiagnostic {
  std::string code;  // e.g. SideConditionFailed, ComponentMismatch
  std::string message;
};

struct KernelVerdict {
  bool holds = true;
  std::vector<ProofDiagnostic> diagnostics;
};

struct KernelOptions {
  // Drop the G_l clause of the conseq side condition.
  bool lax_conseq = false;
};

// Check one node against its rule schema; empty result means it conforms.
// Side conditions are recomputed from the schema, not read from the node.
std::vector<ProofDiagnostic> check_rule(const ProofNode& node,
                                        const StateSpace& space,
                                        const SubMap& subs,
                                        const KernelOptions& opts = {});

// Check every node of the tree.
KernelVerdict check_proof(const ProofNode& root, const StateSpace& space,
                          const SubMap& subs, const KernelOptions& opts = {});

struct TripleDoesNotHoldError : NrbError {
  std::vector<Transition> counterexamples;
  explicit TripleDoesNotHoldError(std::vector<Transition> cex)
      : NrbError("the triple does not hold"), counterexamples(std::move(cex)) {}
};

struct ProofGenerationError : NrbError {
  using NrbError::NrbError;
};

// Build a kernel-accepted derivation for a true judgement over a
// deterministic program. Throws NotDeterministicError or
// TripleDoesNotHoldError when the preconditions fail.
ProofNode generate_proof(const Judgement& j, const StateSpace& space,
                         const SubMap& subs);

// JSON serialization; deserialize(serialize(p)) is bit-exact on re-serialize.
std::string proof_to_json(const ProofNode& p);
ProofNode proof_from_json(const std::string& text);

}  // namespace nrb
