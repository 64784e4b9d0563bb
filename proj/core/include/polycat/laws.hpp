#pragma once

#include <string>

#include "polycat/polycategory.hpp"

namespace polycat {

/// A witness that `carrier` represents a universal construction on
/// `operands`, with the structural morphism inducing the hom-set
/// bijection (e.g. for a tensor: structural in P(A,B;A@B)).
struct ProductWitness {
    enum class Kind { Tensor, Cotensor, Unit, Counit, Hom };
    Kind kind;
    std::vector<ObjectId> operands;
    ObjectId carrier;
    PolyMorphism structural;
};

struct LawResult {
    std::string law;
    bool passed = true;
    std::string counterexample;  // empty when passed
};

struct LawReport {
    std::vector<LawResult> results;
    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

/// Exercises the polycategory axioms (unit, associativity, interchange,
/// equivariance, oracle determinism) on all hom-sets up to `arity_bound`,
/// visiting at most `samples` composable tuples per law.
LawReport check_laws(const Polycategory& p, std::size_t arity_bound, std::size_t samples = 20000);

/// True iff composition with the structural morphism is a bijection on
/// all hom-sets with contexts of length <= arity_bound. On failure and
/// when `why` is non-null, a counterexample description is stored there.
bool check_representability(const Polycategory& p, const ProductWitness& w,
                            std::size_t arity_bound, std::string* why = nullptr);

}  // namespace polycat
