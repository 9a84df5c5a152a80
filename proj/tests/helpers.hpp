#pragma once

#include "ncline/serialize.hpp"

namespace testhelp {

// one catalog per test binary; towers stay alive for the whole run
inline const ncline::Catalog& cat() {
    static ncline::Catalog c = ncline::build_catalog();
    return c;
}

inline std::shared_ptr<const ncline::FieldTower> field(const std::string& name) {
    return cat().field(name);
}

inline const ncline::TwoSidedVectorSpace& bimod(const std::string& qualified) {
    return cat().bimodule(qualified);
}

}  // namespace testhelp
