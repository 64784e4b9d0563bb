#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polycat/quantale.hpp"

namespace polycat::linlog {

/// Connectives of multiplicative-additive linear logic without
/// exponentials. The intuitionistic fragment uses Tensor, One, Lolli,
/// With, Plus (optionally Zero); the classical fragment adds Par, Bot,
/// Top and formal duals.
enum class Conn { Atom, Dual, Tensor, Par, Lolli, With, Plus, One, Bot, Zero, Top };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// An immutable formula tree. `atom` is set for Conn::Atom; `left` is the
/// only child of Dual; binary connectives use both children.
struct Formula {
    Conn conn;
    std::string atom;
    FormulaPtr left;
    FormulaPtr right;
};

FormulaPtr atom(std::string name);
FormulaPtr dual(FormulaPtr f);
FormulaPtr tensor(FormulaPtr a, FormulaPtr b);
FormulaPtr par(FormulaPtr a, FormulaPtr b);
FormulaPtr lolli(FormulaPtr a, FormulaPtr b);
FormulaPtr with(FormulaPtr a, FormulaPtr b);
FormulaPtr oplus(FormulaPtr a, FormulaPtr b);
FormulaPtr one();
FormulaPtr bottom();
FormulaPtr zero();
FormulaPtr top();

bool equal(const FormulaPtr& a, const FormulaPtr& b);
/// Number of tree nodes (atoms and constants count one each).
std::size_t size(const FormulaPtr& f);
/// ASCII rendering in the input grammar, fully parenthesized where needed.
std::string render(const FormulaPtr& f);

/// True iff the formula uses only Tensor, One, Lolli, With, Plus (and
/// Zero when allowed).
bool in_intuitionistic_fragment(const FormulaPtr& f, bool with_zero);

/// Negation normal form over literals: Dual survives only directly on
/// atoms; Lolli is expanded. nnf_dual is the normal form of the negation;
/// both are involutive.
FormulaPtr nnf(const FormulaPtr& f);
FormulaPtr nnf_dual(const FormulaPtr& f);

/// A two-sided sequent. The intuitionistic calculus requires exactly one
/// succedent formula; the classical prover accepts any shape.
struct Sequent {
    std::vector<FormulaPtr> antecedent;
    std::vector<FormulaPtr> succedent;
};

std::string render(const Sequent& s);

/// Parses the ASCII grammar: atoms [A-Za-z][A-Za-z0-9]*, `*` `#` `-o`
/// `&` `+` `1` `bot` `0` `top`, postfix `^`, parentheses; precedence
/// (tightest first) ^, * / #, & / +, -o (right-associative). Throws
/// ParseError with a character position on malformed input.
FormulaPtr parse_formula(const std::string& text);
/// `Gamma |- Delta` with comma-separated sides, either possibly empty.
Sequent parse_sequent(const std::string& text);

/// A rule-labeled derivation tree; every node stores its full conclusion
/// so the tree re-checks against the rule schemas without any context
/// from the search that produced it.
struct Derivation {
    std::string rule;
    Sequent conclusion;
    std::vector<Derivation> premises;
};

/// Complete cut-free search in one-sided MALL without exponentials; the
/// sequent is translated to |- nnf(~Gamma), nnf(Delta) first. Returns a
/// checkable derivation exactly when provable. `budget` bounds visited
/// subproblems; exhausting it throws OracleTimeout.
std::optional<Derivation> prove_classical(const Sequent& s, std::size_t budget = 50000000);

/// Complete cut-free search in the two-sided intuitionistic calculus
/// (Tensor, One, Lolli, With, Plus, and the Zero axiom when present).
/// Requires a single succedent and intuitionistic-fragment formulas.
std::optional<Derivation> prove_intuitionistic(const Sequent& s, std::size_t budget = 50000000);

/// Independent rule-schema checker: validates every node of a derivation
/// against the classical one-sided or intuitionistic two-sided calculus.
bool check_derivation(const Derivation& d, bool classical, std::string* why = nullptr);

/// Truth of the sequent in a posetal *-autonomous model under an atom
/// valuation: tensor of the antecedent below the par of the succedent.
/// Throws TypeMismatchError on a missing atom or an unavailable lattice
/// operation.
bool interpret(const Sequent& s, const PosetalPolycategory& m,
               const std::map<std::string, std::string>& valuation);

/// `C -o ((0 -o X) -o A), (C -o B) -o 0 |- A`.
Sequent schellinx_sequent();

/// All fragment formulas with exactly `sz` nodes over atoms X1..Xn.
std::vector<FormulaPtr> enumerate_formulas(std::size_t atom_count, std::size_t sz, bool with_zero);

/// All single-succedent fragment sequents whose node counts sum to at
/// most `size_bound`, antecedents in canonical order, smallest total
/// first. Generation stops at `max_count` sequents; `truncated` reports
/// whether the cap was hit.
std::vector<Sequent> enumerate_sequents(std::size_t atom_count, std::size_t size_bound,
                                        bool with_zero, std::size_t max_count = SIZE_MAX,
                                        bool* truncated = nullptr);

/// Seeded sequent sampling: the total size is uniform on [1, size_bound],
/// then the sequent is uniform among ordered single-succedent sequents of
/// that exact total size (counted by dynamic programming).
Sequent sample_sequent(std::size_t atom_count, std::size_t size_bound, bool with_zero,
                       std::mt19937_64& rng);

struct Mismatch {
    Sequent sequent;
    bool classical_provable = false;
    bool intuitionistic_provable = false;
};

struct ConservativityReport {
    std::size_t checked = 0;
    std::vector<Mismatch> mismatches;
    /// True when the exhaustive corpus was cut off at max_corpus.
    bool truncated = false;
};

struct HarnessOptions {
    std::size_t atom_count = 2;
    std::size_t size_bound = 7;
    bool with_zero = false;
    /// (sample count, seed); nullopt runs the exhaustive corpus.
    std::optional<std::pair<std::size_t, std::uint64_t>> sample;
    std::size_t budget = 50000000;
    /// Cap on the exhaustive corpus; beyond it the report is partial.
    std::size_t max_corpus = 500000;
};

/// Runs both provers over the corpus and reports every sequent where the
/// verdicts differ. Mismatch order is normalized by rendered text.
ConservativityReport conservativity_harness(const HarnessOptions& opts);

}  // namespace polycat::linlog
