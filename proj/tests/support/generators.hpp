#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "fomforge/model.hpp"

// Shared test helpers: compact model builders, a random generator for valid
// modules (round-trip properties), a universe-slice generator for
// pairwise-compatible load sets, and poisoned variants for atomicity tests.

namespace fomforge::testgen {

// -- builders ---------------------------------------------------------------

AttributeDef attr(std::string name, std::string data_type = "HLAunicodeString");
ParameterDef param(std::string name, std::string data_type = "HLAunicodeString");
ObjectClassDef regular(std::string name, std::vector<AttributeDef> attributes = {},
                       std::vector<ObjectClassDef> children = {});
ObjectClassDef scaffold(std::string name, std::vector<ObjectClassDef> children = {});
InteractionClassDef regular_interaction(std::string name,
                                        std::vector<ParameterDef> parameters = {},
                                        std::vector<InteractionClassDef> children = {});
InteractionClassDef scaffold_interaction(std::string name,
                                         std::vector<InteractionClassDef> children = {});
ObjectModule make_module(std::string name, std::vector<ObjectClassDef> object_roots,
                         std::vector<InteractionClassDef> interaction_roots = {});

// -- random valid modules (round-trip fodder) -------------------------------

ObjectModule random_module(std::mt19937& rng);

// -- compatible load sets ----------------------------------------------------

// Modules sliced from one shared universe: duplicates are byte-equivalent,
// every scaffolding class has a regular owner inside the set, and all name
// references resolve within the set plus the built-in baseline.
std::vector<ObjectModule> compatible_set(std::mt19937& rng, int module_count, int max_classes);

enum class Poison {
    AttributeExtension,
    ParameterExtension,
    ConflictingDuplicate,
    UnresolvedScaffolding,
    SwitchesMismatch,
};

// A compatible set with one module altered so that an atomic load must be
// rejected for the given reason.
std::vector<ObjectModule> poisoned_set(std::mt19937& rng, Poison kind);

// -- oracles ------------------------------------------------------------------

// Fully-qualified object and interaction class names, roots included.
std::set<std::string> flattened_name_set(const ObjectModule& m);

}  // namespace fomforge::testgen
