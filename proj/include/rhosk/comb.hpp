#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhosk/presentation.hpp"
#include "rhosk/process.hpp"
#include "rhosk/rewrite.hpp"
#include "rhosk/term.hpp"

namespace rhosk {

/// Signature, | monoid and the rules sigma, kappa, iota, xi, epsilon.
Presentation comb_presentation();
const RewriteSystem& comb_system();
/// Every rule but xi.
const RewriteSystem& comb_admin_system();
/// sigma, kappa and iota only.
const RewriteSystem& comb_ski_system();

/// Leaf standing for the free name `id` during translation, printed `$id`.
Term name_token(const std::string& id);
bool is_name_token(const Term& t);
bool contains_leaf(const Term& t, const std::string& leaf);
bool contains_name_tokens(const Term& t);

/// Bracket abstraction of the name token for `x` out of `c`.
Term abstract_elim(const std::string& x, const Term& c);

/// Translation of a process into combinators, in canonical form. Free
/// variables become name tokens.
Term interp(const Process& p);
Term interp_name(const Name& n);

class BackinterpError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// R_0 = 0, R_{i+1} = &R_i!0; the binders chosen by backinterp are &R_i.
Process fresh_process(std::size_t i);

/// Translation of a W-sorted, C-free combinator back into a process.
/// Throws BackinterpError on other input and FuelExhausted when head
/// reduction takes more than `fuel` steps.
Process backinterp(const Term& c, std::size_t fuel = 100'000);
/// The canonical name denoted by an N-sorted, C-free combinator.
Name backinterp_name(const Term& c, std::size_t fuel = 100'000);

/// ((| C) c)
Term wrap_context(const Term& c);

/// A term built as in the hand calculations of abstraction elimination,
/// already applied to the name token, and the term it should reduce to.
struct DerivationCase {
  std::string name;
  Term start;
  Term expected;
};

std::vector<DerivationCase> derivation_cases();

}  // namespace rhosk
