#include "fomforge/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "fomforge/rule_ids.hpp"

namespace fomforge {

namespace {

template <typename T>
const T* find_by_name(const std::vector<T>& table, std::string_view name) {
    for (const auto& entry : table) {
        if (entry.name == name) return &entry;
    }
    return nullptr;
}

}  // namespace

const DataTypeDef* ObjectModule::find_data_type(std::string_view name) const {
    return find_by_name(data_types, name);
}

const Dimension* ObjectModule::find_dimension(std::string_view name) const {
    return find_by_name(dimensions, name);
}

const Transportation* ObjectModule::find_transportation(std::string_view name) const {
    return find_by_name(transportations, name);
}

const SynchronizationPoint* ObjectModule::find_synchronization(std::string_view label) const {
    for (const auto& entry : synchronization_points) {
        if (entry.label == label) return &entry;
    }
    return nullptr;
}

const UpdateRate* ObjectModule::find_update_rate(std::string_view name) const {
    return find_by_name(update_rates, name);
}

const NoteEntry* ObjectModule::find_note(std::string_view label) const {
    for (const auto& entry : notes) {
        if (entry.label == label) return &entry;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// HandleTable

std::uint32_t HandleTable::assign(const std::string& fqn) {
    const std::uint32_t handle = next_++;
    entries_.emplace_back(fqn, handle);
    return handle;
}

std::optional<std::uint32_t> HandleTable::find(std::string_view fqn) const {
    for (const auto& [name, handle] : entries_) {
        if (name == fqn) return handle;
    }
    return std::nullopt;
}

std::optional<std::string> HandleTable::name_of(std::uint32_t handle) const {
    for (const auto& [name, h] : entries_) {
        if (h == handle) return name;
    }
    return std::nullopt;
}

void MergeReport::add_table_entry(const std::string& table, const std::string& entry) {
    for (auto& [name, entries] : added_table_entries) {
        if (name == table) {
            entries.push_back(entry);
            return;
        }
    }
    added_table_entries.emplace_back(table, std::vector<std::string>{entry});
}

// ---------------------------------------------------------------------------
// Names, paths, canonical text

bool is_valid_name_token(std::string_view token) {
    if (token.empty()) return false;
    const unsigned char first = static_cast<unsigned char>(token.front());
    if (!std::isalpha(first) && first != '_') return false;
    return std::all_of(token.begin(), token.end(), [](char c) {
        const unsigned char u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

std::string join_path(std::span<const std::string> segments) {
    std::string out;
    for (const auto& segment : segments) {
        if (!out.empty()) out.push_back('.');
        out += segment;
    }
    return out;
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> segments;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t dot = path.find('.', start);
        if (dot == std::string_view::npos) {
            segments.emplace_back(path.substr(start));
            break;
        }
        segments.emplace_back(path.substr(start, dot - start));
        start = dot + 1;
        if (start == path.size()) {
            segments.emplace_back("");  // trailing dot yields an empty (invalid) segment
            break;
        }
    }
    return segments;
}

std::optional<std::string> canonical_rate(std::string_view text) {
    if (text.empty()) return std::nullopt;
    const std::size_t dot = text.find('.');
    std::string_view int_part = dot == std::string_view::npos ? text : text.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (dot != std::string_view::npos && frac_part.find('.') != std::string_view::npos) return std::nullopt;
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    auto all_digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!all_digits(int_part) || !all_digits(frac_part)) return std::nullopt;

    std::string integer(int_part);
    integer.erase(0, std::min(integer.find_first_not_of('0'), integer.size()));
    if (integer.empty()) integer = "0";

    std::string fraction(frac_part);
    const std::size_t last = fraction.find_last_not_of('0');
    fraction.erase(last == std::string::npos ? 0 : last + 1);

    if (integer == "0" && fraction.empty()) return std::nullopt;  // rates are positive
    if (fraction.empty()) return integer;
    return integer + "." + fraction;
}

std::string normalize_definition_text(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char c : text) {
        const unsigned char u = static_cast<unsigned char>(c);
        if (std::isspace(u)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

namespace {

template <typename Class>
void flatten_names(const Class& node, const std::string& prefix, std::vector<std::string>& out) {
    const std::string fqn = prefix.empty() ? node.name : prefix + "." + node.name;
    out.push_back(fqn);
    for (const auto& child : node.children) flatten_names(child, fqn, out);
}

}  // namespace

std::vector<std::string> flatten_object_class_names(const ObjectModule& m) {
    std::vector<std::string> out;
    out.emplace_back(kObjectRootName);
    for (const auto& child : m.object_root_children) {
        flatten_names(child, std::string(kObjectRootName), out);
    }
    return out;
}

std::vector<std::string> flatten_interaction_class_names(const ObjectModule& m) {
    std::vector<std::string> out;
    out.emplace_back(kInteractionRootName);
    for (const auto& child : m.interaction_root_children) {
        flatten_names(child, std::string(kInteractionRootName), out);
    }
    return out;
}

namespace {

template <typename Class>
const Class* find_class_impl(const std::vector<Class>& roots, std::span<const std::string> path) {
    const std::vector<Class>* level = &roots;
    const Class* found = nullptr;
    for (const auto& segment : path) {
        found = nullptr;
        for (const auto& node : *level) {
            if (node.name == segment) {
                found = &node;
                break;
            }
        }
        if (!found) return nullptr;
        level = &found->children;
    }
    return found;
}

}  // namespace

const ObjectClassDef* find_object_class(const std::vector<ObjectClassDef>& roots,
                                        std::span<const std::string> path) {
    return find_class_impl(roots, path);
}

const InteractionClassDef* find_interaction_class(const std::vector<InteractionClassDef>& roots,
                                                  std::span<const std::string> path) {
    return find_class_impl(roots, path);
}

// ---------------------------------------------------------------------------
// Enum text

std::string_view to_string(ModelType v) {
    switch (v) {
        case ModelType::Fom: return "FOM";
        case ModelType::Som: return "SOM";
        case ModelType::FomModule: return "FOMmodule";
        case ModelType::SomModule: return "SOMmodule";
        case ModelType::Mim: return "MIM";
    }
    return "FOMmodule";
}

std::string_view to_string(ReferenceType v) {
    switch (v) {
        case ReferenceType::Standalone: return "Standalone";
        case ReferenceType::Dependency: return "Dependency";
        case ReferenceType::ComposedFrom: return "ComposedFrom";
        case ReferenceType::Other: return "Other";
    }
    return "Standalone";
}

std::string_view to_string(Sharing v) {
    switch (v) {
        case Sharing::Publish: return "Publish";
        case Sharing::Subscribe: return "Subscribe";
        case Sharing::PublishSubscribe: return "PublishSubscribe";
        case Sharing::Neither: return "Neither";
    }
    return "Neither";
}

std::string_view to_string(OrderType v) {
    return v == OrderType::TimeStamp ? "TimeStamp" : "Receive";
}

std::string_view to_string(DataTypeCategory v) {
    switch (v) {
        case DataTypeCategory::Basic: return "Basic";
        case DataTypeCategory::Simple: return "Simple";
        case DataTypeCategory::Enumerated: return "Enumerated";
        case DataTypeCategory::Array: return "Array";
        case DataTypeCategory::FixedRecord: return "FixedRecord";
        case DataTypeCategory::Variant: return "Variant";
    }
    return "Basic";
}

std::string_view to_string(Reliability v) {
    return v == Reliability::Reliable ? "Reliable" : "BestEffort";
}

std::string_view to_string(SwitchValue v) {
    return v == SwitchValue::Enabled ? "Enabled" : "Disabled";
}

std::string_view to_string(ModuleClass v) {
    return v == ModuleClass::Standalone ? "Standalone" : "Dependent";
}

std::optional<ModelType> parse_model_type(std::string_view text) {
    if (text == "FOM") return ModelType::Fom;
    if (text == "SOM") return ModelType::Som;
    if (text == "FOMmodule") return ModelType::FomModule;
    if (text == "SOMmodule") return ModelType::SomModule;
    if (text == "MIM") return ModelType::Mim;
    return std::nullopt;
}

std::optional<Sharing> parse_sharing(std::string_view text) {
    if (text == "Publish") return Sharing::Publish;
    if (text == "Subscribe") return Sharing::Subscribe;
    if (text == "PublishSubscribe") return Sharing::PublishSubscribe;
    if (text == "Neither") return Sharing::Neither;
    return std::nullopt;
}

std::optional<OrderType> parse_order_type(std::string_view text) {
    if (text == "TimeStamp") return OrderType::TimeStamp;
    if (text == "Receive") return OrderType::Receive;
    return std::nullopt;
}

std::optional<DataTypeCategory> parse_data_type_category(std::string_view text) {
    if (text == "Basic") return DataTypeCategory::Basic;
    if (text == "Simple") return DataTypeCategory::Simple;
    if (text == "Enumerated") return DataTypeCategory::Enumerated;
    if (text == "Array") return DataTypeCategory::Array;
    if (text == "FixedRecord") return DataTypeCategory::FixedRecord;
    if (text == "Variant") return DataTypeCategory::Variant;
    return std::nullopt;
}

std::optional<Reliability> parse_reliability(std::string_view text) {
    if (text == "Reliable") return Reliability::Reliable;
    if (text == "BestEffort") return Reliability::BestEffort;
    return std::nullopt;
}

std::optional<SwitchValue> parse_switch_value(std::string_view text) {
    if (text == "Enabled") return SwitchValue::Enabled;
    if (text == "Disabled") return SwitchValue::Disabled;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Built-in MIM

namespace {

AttributeDef make_attribute(std::string name, std::string data_type) {
    AttributeDef a;
    a.name = std::move(name);
    a.data_type = std::move(data_type);
    a.transportation = "HLAreliable";
    a.order = OrderType::Receive;
    return a;
}

InteractionClassDef make_mom_interaction(std::string name, std::vector<ParameterDef> params) {
    InteractionClassDef ic;
    ic.name = std::move(name);
    InteractionClassProps props;
    props.sharing = Sharing::PublishSubscribe;
    props.transportation = "HLAreliable";
    props.order = OrderType::Receive;
    props.parameters = std::move(params);
    ic.props = std::move(props);
    return ic;
}

ObjectModule build_default_mim() {
    ObjectModule m;
    m.identification.name = "HLAstandardMIM";
    m.identification.model_type = ModelType::Mim;
    m.identification.version = "1.0";
    m.identification.references.push_back(Reference{ReferenceType::Standalone, "", {}});

    m.object_root_attributes.push_back(
        make_attribute("HLAprivilegeToDeleteObject", "HLAunicodeString"));

    ObjectClassDef federation;
    federation.name = "HLAfederation";
    federation.props = ObjectClassProps{
        Sharing::PublishSubscribe,
        {make_attribute("HLAFOMmoduleDesignatorList", "HLAmoduleDesignatorList"),
         make_attribute("HLAMIMDesignator", "HLAunicodeString"),
         make_attribute("HLAcurrentFDD", "HLAunicodeString")}};

    ObjectClassDef federate;
    federate.name = "HLAfederate";
    federate.props = ObjectClassProps{
        Sharing::PublishSubscribe,
        {make_attribute("HLAFOMmoduleDesignatorList", "HLAmoduleDesignatorList")}};

    ObjectClassDef manager;
    manager.name = std::string(kManagerClassName);
    manager.props = ObjectClassProps{Sharing::Neither, {}};
    manager.children.push_back(std::move(federation));
    manager.children.push_back(std::move(federate));
    m.object_root_children.push_back(std::move(manager));

    m.interaction_root_children.push_back(make_mom_interaction(
        "HLArequestFOMmoduleData", {ParameterDef{"HLAFOMmoduleIndicator", "HLAinteger32BE", ""}}));
    m.interaction_root_children.push_back(make_mom_interaction(
        "HLAreportFOMmoduleData", {ParameterDef{"HLAFOMmoduleIndicator", "HLAinteger32BE", ""},
                                   ParameterDef{"HLAFOMmoduleData", "HLAunicodeString", ""}}));
    m.interaction_root_children.push_back(make_mom_interaction("HLArequestMIMData", {}));
    m.interaction_root_children.push_back(make_mom_interaction(
        "HLAreportMIMData", {ParameterDef{"HLAMIMData", "HLAunicodeString", ""}}));

    m.data_types.push_back(
        DataTypeDef{"HLAunicodeString", DataTypeCategory::Basic, "16-bit unicode character string"});
    m.data_types.push_back(
        DataTypeDef{"HLAinteger32BE", DataTypeCategory::Basic, "32-bit big-endian signed integer"});
    m.data_types.push_back(DataTypeDef{"HLAmoduleDesignatorList", DataTypeCategory::Array,
                                       "HLAunicodeString cardinality dynamic"});

    m.transportations.push_back(Transportation{"HLAreliable", Reliability::Reliable});
    m.transportations.push_back(Transportation{"HLAbestEffort", Reliability::BestEffort});

    m.switches = Switches{};
    return m;
}

}  // namespace

ObjectModule default_mim() {
    static const ObjectModule mim = build_default_mim();
    return mim;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

struct ReferenceIndex {
    const ObjectModule* module = nullptr;
    const ObjectModule* mim = nullptr;

    bool data_type_resolves(std::string_view name) const {
        return module->find_data_type(name) || mim->find_data_type(name);
    }
    bool transportation_resolves(std::string_view name) const {
        return module->find_transportation(name) || mim->find_transportation(name);
    }
    bool dimension_resolves(std::string_view name) const {
        return module->find_dimension(name) || mim->find_dimension(name);
    }
};

bool attribute_refs_resolve(const AttributeDef& a, const ReferenceIndex& index) {
    if (!index.data_type_resolves(a.data_type)) return false;
    if (!index.transportation_resolves(a.transportation)) return false;
    for (const auto& dim : a.dimensions) {
        if (!index.dimension_resolves(dim)) return false;
    }
    return true;
}

bool object_tree_is_self_contained(const std::vector<ObjectClassDef>& nodes,
                                   const ReferenceIndex& index, bool* has_scaffolding) {
    bool ok = true;
    for (const auto& node : nodes) {
        if (node.is_scaffolding()) {
            *has_scaffolding = true;
        } else {
            for (const auto& attr : node.props->attributes) {
                ok = ok && attribute_refs_resolve(attr, index);
            }
        }
        ok = object_tree_is_self_contained(node.children, index, has_scaffolding) && ok;
    }
    return ok;
}

bool interaction_tree_is_self_contained(const std::vector<InteractionClassDef>& nodes,
                                        const ReferenceIndex& index, bool* has_scaffolding) {
    bool ok = true;
    for (const auto& node : nodes) {
        if (node.is_scaffolding()) {
            *has_scaffolding = true;
        } else {
            if (!index.transportation_resolves(node.props->transportation)) ok = false;
            for (const auto& param : node.props->parameters) {
                if (!index.data_type_resolves(param.data_type)) ok = false;
            }
        }
        ok = interaction_tree_is_self_contained(node.children, index, has_scaffolding) && ok;
    }
    return ok;
}

}  // namespace

ClassificationResult classify_module(const ObjectModule& m) {
    static const ObjectModule mim = default_mim();
    const ReferenceIndex index{&m, &mim};

    bool has_scaffolding = false;
    bool self_contained = object_tree_is_self_contained(m.object_root_children, index, &has_scaffolding);
    self_contained =
        interaction_tree_is_self_contained(m.interaction_root_children, index, &has_scaffolding) &&
        self_contained;
    for (const auto& attr : m.object_root_attributes) {
        self_contained = attribute_refs_resolve(attr, index) && self_contained;
    }
    for (const auto& sync : m.synchronization_points) {
        self_contained = index.data_type_resolves(sync.tag_data_type) && self_contained;
    }

    bool declares_dependency = false;
    bool declares_standalone = false;
    for (const auto& ref : m.identification.references) {
        if (ref.type == ReferenceType::Dependency) declares_dependency = true;
        if (ref.type == ReferenceType::Standalone) declares_standalone = true;
    }

    ClassificationResult result;
    result.kind = (has_scaffolding || !self_contained || declares_dependency)
                      ? ModuleClass::Dependent
                      : ModuleClass::Standalone;

    if (result.kind == ModuleClass::Dependent && declares_standalone && !declares_dependency) {
        result.warnings.push_back(
            std::string(rules::kClassifyMismatch) +
            ": declared Standalone but the module structure is Dependent (scaffolding or "
            "unresolved name references present)");
    }
    if (result.kind == ModuleClass::Standalone && !declares_standalone && declares_dependency) {
        // Unreachable (a Dependency reference forces Dependent); kept for clarity.
        result.warnings.push_back(std::string(rules::kClassifyMismatch) +
                                  ": declared Dependent but the module structure is Standalone");
    }
    return result;
}

// ---------------------------------------------------------------------------
// Invariants

namespace {

class InvariantChecker {
public:
    explicit InvariantChecker(const ObjectModule& m) : m_(m) {}

    std::vector<InvariantViolation> run() {
        check_identification();
        check_object_tree(m_.object_root_children, std::string(kObjectRootName));
        check_interaction_tree(m_.interaction_root_children, std::string(kInteractionRootName));
        check_tables();
        check_reserved_names();
        return std::move(violations_);
    }

private:
    void add(const char* rule, std::string message) {
        violations_.push_back(InvariantViolation{rule, std::move(message)});
    }

    void check_identification() {
        const auto& id = m_.identification;
        if (id.name.empty()) add(rules::kIdentification, "module name is empty");
        if (id.name.find(',') != std::string::npos) {
            add(rules::kIdentification, "module name must not contain ','");
        }
        int dependency_count = 0;
        int composed_count = 0;
        bool standalone = false;
        for (const auto& ref : id.references) {
            switch (ref.type) {
                case ReferenceType::Standalone:
                    standalone = true;
                    if (!ref.identifications.empty()) {
                        add(rules::kReference,
                            "Standalone reference must carry the identification token NA");
                    }
                    break;
                case ReferenceType::Dependency:
                    ++dependency_count;
                    break;
                case ReferenceType::ComposedFrom:
                    ++composed_count;
                    break;
                case ReferenceType::Other:
                    break;
            }
            if (ref.type != ReferenceType::Standalone && ref.identifications.empty()) {
                add(rules::kReference, std::string(to_string(ref.type)) +
                                           " reference must list at least one module name");
            }
            for (const auto& ident : ref.identifications) {
                if (ident.empty() || ident.find(',') != std::string::npos) {
                    add(rules::kReference, "reference identification '" + ident + "' is invalid");
                }
            }
        }
        const bool is_module =
            id.model_type == ModelType::FomModule || id.model_type == ModelType::SomModule;
        if (is_module && dependency_count > 1) {
            add(rules::kReference, "module declares more than one Dependency reference");
        }
        if (is_module && composed_count > 1) {
            add(rules::kReference, "module declares more than one ComposedFrom reference");
        }
        if (standalone && dependency_count > 0) {
            add(rules::kReference, "module declares both Standalone and Dependency references");
        }
    }

    void check_attribute(const AttributeDef& a, const std::string& owner) {
        if (!is_valid_name_token(a.name)) {
            add(rules::kBadToken, "attribute name '" + a.name + "' in " + owner + " is not a valid token");
        }
        if (!is_valid_name_token(a.data_type)) {
            add(rules::kBadToken, "attribute '" + owner + "." + a.name + "' has invalid dataType token");
        }
        if (!is_valid_name_token(a.transportation)) {
            add(rules::kBadToken,
                "attribute '" + owner + "." + a.name + "' has invalid transportation token");
        }
        for (const auto& dim : a.dimensions) {
            if (!is_valid_name_token(dim)) {
                add(rules::kBadToken,
                    "attribute '" + owner + "." + a.name + "' has invalid dimension token '" + dim + "'");
            }
        }
    }

    void check_object_tree(const std::vector<ObjectClassDef>& siblings, const std::string& prefix) {
        std::unordered_set<std::string_view> seen;
        for (const auto& node : siblings) {
            const std::string fqn = prefix + "." + node.name;
            if (!is_valid_name_token(node.name)) {
                add(rules::kBadToken, "class name '" + node.name + "' is not a valid token");
            }
            if (!seen.insert(node.name).second) {
                add(rules::kDuplicateName, "duplicate sibling class '" + fqn + "'");
            }
            if (!node.is_scaffolding()) {
                std::unordered_set<std::string_view> attr_names;
                for (const auto& attr : node.props->attributes) {
                    check_attribute(attr, fqn);
                    if (!attr_names.insert(attr.name).second) {
                        add(rules::kDuplicateName,
                            "duplicate attribute '" + attr.name + "' in class " + fqn);
                    }
                }
            }
            check_object_tree(node.children, fqn);
        }
    }

    void check_interaction_tree(const std::vector<InteractionClassDef>& siblings,
                                const std::string& prefix) {
        std::unordered_set<std::string_view> seen;
        for (const auto& node : siblings) {
            const std::string fqn = prefix + "." + node.name;
            if (!is_valid_name_token(node.name)) {
                add(rules::kBadToken, "interaction name '" + node.name + "' is not a valid token");
            }
            if (!seen.insert(node.name).second) {
                add(rules::kDuplicateName, "duplicate sibling interaction '" + fqn + "'");
            }
            if (!node.is_scaffolding()) {
                if (!is_valid_name_token(node.props->transportation)) {
                    add(rules::kBadToken, "interaction '" + fqn + "' has invalid transportation token");
                }
                std::unordered_set<std::string_view> param_names;
                for (const auto& param : node.props->parameters) {
                    if (!is_valid_name_token(param.name) || !is_valid_name_token(param.data_type)) {
                        add(rules::kBadToken,
                            "parameter '" + param.name + "' of " + fqn + " has an invalid token");
                    }
                    if (!param_names.insert(param.name).second) {
                        add(rules::kDuplicateName,
                            "duplicate parameter '" + param.name + "' in interaction " + fqn);
                    }
                }
            }
            check_interaction_tree(node.children, fqn);
        }
    }

    template <typename T, typename NameOf>
    void check_unique(const std::vector<T>& table, const char* table_name, NameOf name_of) {
        std::unordered_set<std::string_view> seen;
        for (const auto& entry : table) {
            const std::string_view name = name_of(entry);
            if (name.empty()) {
                add(rules::kBadToken, std::string(table_name) + " entry has an empty name");
            }
            if (!seen.insert(name).second) {
                add(rules::kDuplicateName,
                    "duplicate " + std::string(table_name) + " entry '" + std::string(name) + "'");
            }
        }
    }

    void check_tables() {
        check_unique(m_.data_types, "dataType", [](const DataTypeDef& d) { return std::string_view(d.name); });
        check_unique(m_.dimensions, "dimension", [](const Dimension& d) { return std::string_view(d.name); });
        check_unique(m_.transportations, "transportation",
                     [](const Transportation& t) { return std::string_view(t.name); });
        check_unique(m_.synchronization_points, "synchronization",
                     [](const SynchronizationPoint& s) { return std::string_view(s.label); });
        check_unique(m_.update_rates, "updateRate",
                     [](const UpdateRate& u) { return std::string_view(u.name); });
        check_unique(m_.notes, "note", [](const NoteEntry& n) { return std::string_view(n.label); });

        for (const auto& dt : m_.data_types) {
            if (!is_valid_name_token(dt.name)) {
                add(rules::kBadToken, "dataType name '" + dt.name + "' is not a valid token");
            }
            if (normalize_definition_text(dt.definition) != dt.definition) {
                add(rules::kBadValue, "dataType '" + dt.name + "' definition is not normalized");
            }
        }
        for (const auto& dim : m_.dimensions) {
            if (!is_valid_name_token(dim.name)) {
                add(rules::kBadToken, "dimension name '" + dim.name + "' is not a valid token");
            }
            if (dim.upper_bound == 0) {
                add(rules::kBadValue, "dimension '" + dim.name + "' upperBound must be positive");
            }
        }
        for (const auto& t : m_.transportations) {
            if (!is_valid_name_token(t.name)) {
                add(rules::kBadToken, "transportation name '" + t.name + "' is not a valid token");
            }
        }
        for (const auto& sync : m_.synchronization_points) {
            if (!is_valid_name_token(sync.tag_data_type)) {
                add(rules::kBadToken,
                    "synchronization '" + sync.label + "' has invalid tagDataType token");
            }
        }
        for (const auto& rate : m_.update_rates) {
            if (!is_valid_name_token(rate.name)) {
                add(rules::kBadToken, "updateRate name '" + rate.name + "' is not a valid token");
            }
            const auto canon = canonical_rate(rate.rate_hz);
            if (!canon || *canon != rate.rate_hz) {
                add(rules::kBadValue, "updateRate '" + rate.name + "' rateHz '" + rate.rate_hz +
                                          "' is not canonical positive decimal text");
            }
        }
    }

    void check_reserved_names() {
        const ModelType type = m_.identification.model_type;
        const bool is_plain_module = type == ModelType::FomModule || type == ModelType::SomModule;
        if (!is_plain_module) return;

        if (!m_.object_root_attributes.empty()) {
            add(rules::kReservedRoot,
                "only a MIM or a composed model may define object root attributes");
        }
        check_no_root_segments(m_.object_root_children);
        check_no_root_segments(m_.interaction_root_children);
        for (const auto& cls : m_.object_root_children) {
            if (cls.name == kManagerClassName) {
                add(rules::kReservedRoot,
                    "management class subtree may only be defined by a MIM");
            }
        }
        static constexpr std::string_view kMomInteractions[] = {
            "HLArequestFOMmoduleData", "HLAreportFOMmoduleData", "HLArequestMIMData",
            "HLAreportMIMData"};
        for (const auto& ic : m_.interaction_root_children) {
            for (std::string_view mom : kMomInteractions) {
                if (ic.name == mom) {
                    add(rules::kReservedRoot, "management interaction '" + ic.name +
                                                  "' may only be defined by a MIM");
                }
            }
        }
    }

    template <typename Class>
    void check_no_root_segments(const std::vector<Class>& nodes) {
        for (const auto& node : nodes) {
            if (node.name == kObjectRootName || node.name == kInteractionRootName) {
                add(rules::kReservedRoot,
                    "class name '" + node.name + "' is reserved for the implicit roots");
            }
            check_no_root_segments(node.children);
        }
    }

    const ObjectModule& m_;
    std::vector<InvariantViolation> violations_;
};

}  // namespace

std::vector<InvariantViolation> check_module_invariants(const ObjectModule& m) {
    return InvariantChecker(m).run();
}

}  // namespace fomforge
