#include "polycat/signature.hpp"

#include <algorithm>
#include <sstream>

#include "polycat/errors.hpp"

namespace polycat {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Context parse_side(const std::string& side, int line_no) {
    std::string t = trim(side);
    if (t == ".") return {};
    Context out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ParseError("signature line " + std::to_string(line_no) + ": empty object name");
        out.emplace_back(item);
    }
    if (out.empty())
        throw ParseError("signature line " + std::to_string(line_no) +
                         ": empty side must be written `.`");
    return out;
}

}  // namespace

bool Signature::has_object(const ObjectId& o) const {
    return std::find(objects.begin(), objects.end(), o) != objects.end();
}

const Generator& Signature::generator(const std::string& name) const {
    for (const auto& g : generators)
        if (g.name == name) return g;
    throw ParseError("unknown generator: " + name);
}

Signature parse_signature(const std::string& text) {
    Signature sig;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("obj ", 0) == 0) {
            std::string name = trim(line.substr(4));
            if (name.empty()) throw ParseError("signature line " + std::to_string(line_no) + ": missing object name");
            ObjectId o{name};
            if (!sig.has_object(o)) sig.objects.push_back(o);
        } else if (line.rfind("gen ", 0) == 0) {
            std::string rest = line.substr(4);
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw ParseError("signature line " + std::to_string(line_no) + ": expected `gen name : src -> tgt`");
            std::string name = trim(rest.substr(0, colon));
            std::string type = rest.substr(colon + 1);
            auto arrow = type.find("->");
            if (arrow == std::string::npos)
                throw ParseError("signature line " + std::to_string(line_no) + ": missing `->`");
            Generator g;
            g.name = name;
            g.source = parse_side(type.substr(0, arrow), line_no);
            g.target = parse_side(type.substr(arrow + 2), line_no);
            if (g.name.empty())
                throw ParseError("signature line " + std::to_string(line_no) + ": missing generator name");
            for (const auto& other : sig.generators)
                if (other.name == g.name)
                    throw ParseError("duplicate generator name: " + g.name);
            for (const auto& o : g.source)
                if (!sig.has_object(o)) throw ParseError("undeclared object " + o.name + " in generator " + g.name);
            for (const auto& o : g.target)
                if (!sig.has_object(o)) throw ParseError("undeclared object " + o.name + " in generator " + g.name);
            sig.generators.push_back(std::move(g));
        } else {
            throw ParseError("signature line " + std::to_string(line_no) + ": unrecognized declaration");
        }
    }
    return sig;
}

}  // namespace polycat
