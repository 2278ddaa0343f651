#pragma once

#include <string>

#include "rumkit/io.hpp"

inline std::string fixture_path(const std::string& name) {
    return std::string(RUMKIT_FIXTURE_DIR) + "/" + name;
}

inline rumkit::SymmetricFramework load_fixture(const std::string& name) {
    return rumkit::parse_framework_file(fixture_path(name));
}

inline rumkit::Character make_char(std::initializer_list<rumkit::Turn> turns,
                                   std::initializer_list<long long> torsion) {
    rumkit::Character chi;
    chi.free_turns = turns;
    chi.torsion_indices = torsion;
    return chi;
}

inline rumkit::Turn frac(long long num, long long den) {
    return rumkit::Turn::from_fraction(num, den);
}
