#include <doctest.h>

#include <algorithm>
#include <cctype>

#include "fomforge/io.hpp"
#include "fomforge/model.hpp"
#include "fomforge/rule_ids.hpp"
#include "support/generators.hpp"

using namespace fomforge;
using namespace fomforge::testgen;

TEST_CASE("default MIM carries the root privilege attribute") {
    const ObjectModule mim = default_mim();
    REQUIRE(mim.object_root_attributes.size() == 1);
    std::string lowered = mim.object_root_attributes.front().name;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    CHECK(lowered.find("privilegetodeleteobject") != std::string::npos);
}

TEST_CASE("default MIM carries the management query interactions") {
    const ObjectModule mim = default_mim();
    const auto names = flatten_interaction_class_names(mim);
    auto has = [&](std::string_view name) {
        return std::find(names.begin(), names.end(),
                         std::string(kInteractionRootName) + "." + std::string(name)) !=
               names.end();
    };
    CHECK(has("HLArequestFOMmoduleData"));
    CHECK(has("HLArequestMIMData"));
    CHECK(has("HLAreportFOMmoduleData"));
    CHECK(has("HLAreportMIMData"));
}

TEST_CASE("default MIM is self-consistent and byte-stable") {
    const ObjectModule mim = default_mim();
    CHECK(check_module_invariants(mim).empty());
    CHECK(serialize_module(mim) == serialize_module(default_mim()));

    // Every name reference resolves inside the MIM itself.
    for (const auto& attr : mim.object_root_attributes) {
        CHECK(mim.find_data_type(attr.data_type) != nullptr);
        CHECK(mim.find_transportation(attr.transportation) != nullptr);
    }
    REQUIRE(mim.switches.has_value());
    CHECK(mim.switches->auto_provide == SwitchValue::Enabled);
    CHECK(mim.switches->service_reporting == SwitchValue::Enabled);
}

TEST_CASE("classification: scaffolding makes a module dependent") {
    // The second module of the composite example: scaffolding ancestors
    // plus two regular leaves.
    ObjectModule m = make_module(
        "FOMmodule2",
        {scaffold("Aircraft",
                  {scaffold("CombatAircraft",
                            {regular("BombingPlane", {attr("BombNumber", "HLAinteger32BE")})})}),
         scaffold("Groundvehicle", {regular("Tank", {attr("Type")})})});
    const auto result = classify_module(m);
    CHECK(result.kind == ModuleClass::Dependent);
}

TEST_CASE("classification: regular classes over built-in types are standalone") {
    ObjectModule m = make_module(
        "FOMmodule1",
        {regular("Aircraft", {attr("Name"), attr("Speed", "HLAinteger32BE"),
                              attr("Height", "HLAinteger32BE")}),
         regular("Groundvehicle", {attr("Name"), attr("Speed", "HLAinteger32BE"),
                                   attr("Position")})});
    const auto result = classify_module(m);
    CHECK(result.kind == ModuleClass::Standalone);
    CHECK(result.warnings.empty());
}

TEST_CASE("classification: empty module is standalone") {
    const ObjectModule m = make_module("EmptyModule", {});
    CHECK(classify_module(m).kind == ModuleClass::Standalone);
}

TEST_CASE("classification: dangling reference or dependency declaration") {
    ObjectModule dangling =
        make_module("Dangler", {regular("Thing", {attr("Value", "UnknownType")})});
    CHECK(classify_module(dangling).kind == ModuleClass::Dependent);

    ObjectModule declared = make_module("Declared", {regular("Thing", {attr("Value")})});
    declared.identification.references.push_back(
        Reference{ReferenceType::Dependency, "", {"SomeBase"}});
    CHECK(classify_module(declared).kind == ModuleClass::Dependent);
}

TEST_CASE("classification: declared standalone but structurally dependent warns") {
    ObjectModule m = make_module("Mismatched", {scaffold("Ghost")});
    m.identification.references.push_back(Reference{ReferenceType::Standalone, "", {}});
    const auto result = classify_module(m);
    CHECK(result.kind == ModuleClass::Dependent);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings.front().find(rules::kClassifyMismatch) != std::string::npos);
}

TEST_CASE("classification is pure") {
    std::mt19937 rng(7101);
    for (int i = 0; i < 50; ++i) {
        const ObjectModule m = random_module(rng);
        const auto once = classify_module(m);
        const auto twice = classify_module(m);
        CHECK(once.kind == twice.kind);
        CHECK(once.warnings == twice.warnings);
    }
}

TEST_CASE("canonical rate text") {
    CHECK(canonical_rate("50") == "50");
    CHECK(canonical_rate("50.0") == "50");
    CHECK(canonical_rate("050.50") == "50.5");
    CHECK(canonical_rate("0.5") == "0.5");
    CHECK(canonical_rate(".5") == "0.5");
    CHECK(canonical_rate("12.25") == "12.25");
    CHECK_FALSE(canonical_rate("0").has_value());
    CHECK_FALSE(canonical_rate("0.0").has_value());
    CHECK_FALSE(canonical_rate("").has_value());
    CHECK_FALSE(canonical_rate(".").has_value());
    CHECK_FALSE(canonical_rate("-5").has_value());
    CHECK_FALSE(canonical_rate("5e3").has_value());
    CHECK_FALSE(canonical_rate("1.2.3").has_value());
}

TEST_CASE("name tokens and paths") {
    CHECK(is_valid_name_token("Aircraft"));
    CHECK(is_valid_name_token("_private"));
    CHECK(is_valid_name_token("HLAinteger32BE"));
    CHECK_FALSE(is_valid_name_token(""));
    CHECK_FALSE(is_valid_name_token("9lives"));
    CHECK_FALSE(is_valid_name_token("has space"));
    CHECK_FALSE(is_valid_name_token("dotted.name"));

    const std::vector<std::string> path = {"HLAobjectRoot", "Aircraft", "CombatAircraft"};
    CHECK(join_path(path) == "HLAobjectRoot.Aircraft.CombatAircraft");
    CHECK(split_path("HLAobjectRoot.Aircraft.CombatAircraft") == path);
    CHECK(split_path("Aircraft") == std::vector<std::string>{"Aircraft"});
}

TEST_CASE("definition text normalization") {
    CHECK(normalize_definition_text("  a   b\tc \n") == "a b c");
    CHECK(normalize_definition_text("already normal") == "already normal");
    CHECK(normalize_definition_text("") == "");
}

TEST_CASE("module invariants: duplicates and reserved names") {
    ObjectModule duplicate_siblings =
        make_module("Bad", {regular("Aircraft"), regular("Aircraft")});
    auto violations = check_module_invariants(duplicate_siblings);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kDuplicateName);

    ObjectModule duplicate_attrs =
        make_module("Bad", {regular("Aircraft", {attr("Speed"), attr("Speed")})});
    violations = check_module_invariants(duplicate_attrs);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kDuplicateName);

    ObjectModule manager_thief = make_module("Bad", {regular("HLAmanager")});
    violations = check_module_invariants(manager_thief);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kReservedRoot);

    ObjectModule root_attrs = make_module("Bad", {});
    root_attrs.object_root_attributes.push_back(attr("Privilege"));
    violations = check_module_invariants(root_attrs);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kReservedRoot);
}

TEST_CASE("module invariants: reference rules") {
    ObjectModule m = make_module("Refs", {});
    m.identification.references.push_back(Reference{ReferenceType::Dependency, "", {}});
    auto violations = check_module_invariants(m);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kReference);

    m.identification.references = {Reference{ReferenceType::Standalone, "", {"NotNA"}}};
    violations = check_module_invariants(m);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kReference);

    m.identification.references = {Reference{ReferenceType::Dependency, "", {"A"}},
                                   Reference{ReferenceType::Dependency, "", {"B"}}};
    violations = check_module_invariants(m);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kReference);

    m.identification.references = {Reference{ReferenceType::Standalone, "", {}},
                                   Reference{ReferenceType::Dependency, "", {"A"}}};
    violations = check_module_invariants(m);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().rule_id == rules::kReference);
}

TEST_CASE("handle table never recycles") {
    HandleTable table;
    const auto a = table.assign("HLAobjectRoot.A");
    const auto b = table.assign("HLAobjectRoot.B");
    CHECK(a == 1);
    CHECK(b == 2);
    CHECK(table.find("HLAobjectRoot.A") == a);
    CHECK(table.name_of(b) == "HLAobjectRoot.B");
    CHECK_FALSE(table.find("HLAobjectRoot.C").has_value());
    const auto c = table.assign("HLAobjectRoot.C");
    CHECK(c == 3);
}

TEST_CASE("flattened names include the implicit roots") {
    const ObjectModule m = make_module(
        "Names", {regular("Aircraft", {}, {regular("CombatAircraft")})},
        {regular_interaction("Fire")});
    const auto objects = flatten_object_class_names(m);
    CHECK(objects == std::vector<std::string>{"HLAobjectRoot", "HLAobjectRoot.Aircraft",
                                              "HLAobjectRoot.Aircraft.CombatAircraft"});
    const auto interactions = flatten_interaction_class_names(m);
    CHECK(interactions ==
          std::vector<std::string>{"HLAinteractionRoot", "HLAinteractionRoot.Fire"});
}
