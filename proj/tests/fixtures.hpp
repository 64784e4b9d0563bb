#pragma once

#include <memory>

#include "polycat/circuit.hpp"
#include "polycat/fsp.hpp"
#include "polycat/quantale.hpp"
#include "polycat/signature.hpp"

namespace fixtures {

using namespace polycat;

// Two-element Boolean lattice, tensor = meet, dualizing element 0.
inline Quantale boolean_quantale() {
    return Quantale({"0", "1"}, {{"0", "1"}},
                    {{{"0", "0"}, "0"}, {{"0", "1"}, "0"}, {{"1", "1"}, "1"}}, "1");
}

// Heyting 3-chain 0 < m < 1, tensor = meet. Not *-autonomous at 0.
inline Quantale chain3_quantale() {
    return Quantale({"0", "m", "1"}, {{"0", "m"}, {"m", "1"}},
                    {{{"0", "0"}, "0"},
                     {{"0", "m"}, "0"},
                     {{"0", "1"}, "0"},
                     {{"m", "m"}, "m"},
                     {{"m", "1"}, "m"},
                     {{"1", "1"}, "1"}},
                    "1");
}

// Lukasiewicz 3-chain: a.b = max(0, a+b-1) on {0, h, 1}; *-autonomous at 0.
inline Quantale lukasiewicz3_quantale() {
    return Quantale({"0", "h", "1"}, {{"0", "h"}, {"h", "1"}},
                    {{{"0", "0"}, "0"},
                     {{"0", "h"}, "0"},
                     {{"0", "1"}, "0"},
                     {{"h", "h"}, "0"},
                     {{"h", "1"}, "h"},
                     {{"1", "1"}, "1"}},
                    "1");
}

inline Signature closed_loop_signature() {
    return parse_signature("obj A\n"
                           "gen u : . -> A\n"
                           "gen v : A -> .\n");
}

inline Signature arrow_signature() {
    return parse_signature("obj A\nobj B\n"
                           "gen f : A -> B\n");
}

inline Signature merge_signature() {
    return parse_signature("obj A\nobj B\nobj C\n"
                           "gen m : A, B -> C\n"
                           "gen w : . -> A\n");
}

inline Signature split_signature() {
    return parse_signature("obj A\nobj B\nobj C\nobj D\n"
                           "gen s : A -> C, D\n"
                           "gen m : C, B -> A\n");
}

}  // namespace fixtures
