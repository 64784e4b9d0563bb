#pragma once

#include <string>
#include <vector>

#include "polycat/context.hpp"

namespace polycat {

struct Generator {
    std::string name;
    Context source;
    Context target;
};

/// A finitely presented signature: objects plus typed generators.
struct Signature {
    std::vector<ObjectId> objects;
    std::vector<Generator> generators;

    bool has_object(const ObjectId& o) const;
    const Generator& generator(const std::string& name) const;
};

/// Text format, one declaration per line:
///   obj A
///   gen f : A, B -> C, D
/// An empty side is written `.`. Blank lines and `#` comments are
/// ignored. Duplicate generator names are rejected.
Signature parse_signature(const std::string& text);

}  // namespace polycat
