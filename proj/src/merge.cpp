#include "fomforge/merge.hpp"

#include <algorithm>

#include "fomforge/io.hpp"
#include "fomforge/rule_ids.hpp"

namespace fomforge {

namespace {

std::string child_fqn(const std::string& parent, const std::string& name) {
    return parent + "." + name;
}

bool attributes_equal_ignoring_semantics(const AttributeDef& a, const AttributeDef& b) {
    return a.name == b.name && a.data_type == b.data_type &&
           a.transportation == b.transportation && a.order == b.order &&
           a.dimensions == b.dimensions;
}

bool parameters_equal_ignoring_semantics(const ParameterDef& a, const ParameterDef& b) {
    return a.name == b.name && a.data_type == b.data_type;
}

// True when every element of `base` appears unchanged in `extended` and
// `extended` carries extras: the shape of an in-place extension attempt.
template <typename T, typename EqFn>
bool is_superset(const std::vector<T>& base, const std::vector<T>& extended, EqFn equal) {
    if (extended.size() <= base.size()) return false;
    for (const auto& item : base) {
        const bool found = std::any_of(extended.begin(), extended.end(),
                                       [&](const T& other) { return equal(item, other); });
        if (!found) return false;
    }
    return true;
}

bool is_attribute_extension(const ObjectClassDef& current, const ObjectClassDef& candidate) {
    if (current.is_scaffolding() || candidate.is_scaffolding()) return false;
    return current.props->sharing == candidate.props->sharing &&
           is_superset(current.props->attributes, candidate.props->attributes,
                       attributes_equal_ignoring_semantics);
}

bool is_parameter_extension(const InteractionClassDef& current,
                            const InteractionClassDef& candidate) {
    if (current.is_scaffolding() || candidate.is_scaffolding()) return false;
    return current.props->sharing == candidate.props->sharing &&
           current.props->transportation == candidate.props->transportation &&
           current.props->order == candidate.props->order &&
           is_superset(current.props->parameters, candidate.props->parameters,
                       parameters_equal_ignoring_semantics);
}

}  // namespace

// ---------------------------------------------------------------------------
// Equivalence

Equivalence classes_equivalent(const ObjectClassDef& a, const ObjectClassDef& b) {
    Equivalence eq;
    if (a.is_scaffolding() && b.is_scaffolding()) return eq;
    if (a.is_scaffolding()) {
        eq.kind = Equivalence::Kind::ScaffoldingOfLeft;
        return eq;
    }
    if (b.is_scaffolding()) {
        eq.kind = Equivalence::Kind::ScaffoldingOfRight;
        return eq;
    }
    const auto& pa = *a.props;
    const auto& pb = *b.props;
    if (pa.sharing != pb.sharing) {
        eq.kind = Equivalence::Kind::Conflict;
        eq.reason = "sharing differs (" + std::string(to_string(pa.sharing)) + " vs " +
                    std::string(to_string(pb.sharing)) + ")";
        return eq;
    }
    if (pa.attributes.size() != pb.attributes.size()) {
        eq.kind = Equivalence::Kind::Conflict;
        eq.reason = "attribute set differs (" + std::to_string(pa.attributes.size()) + " vs " +
                    std::to_string(pb.attributes.size()) + " attributes)";
        return eq;
    }
    for (std::size_t i = 0; i < pa.attributes.size(); ++i) {
        const auto& left = pa.attributes[i];
        const auto& right = pb.attributes[i];
        if (!attributes_equal_ignoring_semantics(left, right)) {
            eq.kind = Equivalence::Kind::Conflict;
            eq.reason = left.name == right.name
                            ? "attribute '" + left.name + "' differs"
                            : "attribute set differs ('" + left.name + "' vs '" + right.name +
                                  "' at position " + std::to_string(i + 1) + ")";
            return eq;
        }
        if (left.semantics != right.semantics) {
            eq.warnings.push_back("semantics text differs for attribute '" + left.name + "'");
        }
    }
    return eq;
}

Equivalence classes_equivalent(const InteractionClassDef& a, const InteractionClassDef& b) {
    Equivalence eq;
    if (a.is_scaffolding() && b.is_scaffolding()) return eq;
    if (a.is_scaffolding()) {
        eq.kind = Equivalence::Kind::ScaffoldingOfLeft;
        return eq;
    }
    if (b.is_scaffolding()) {
        eq.kind = Equivalence::Kind::ScaffoldingOfRight;
        return eq;
    }
    const auto& pa = *a.props;
    const auto& pb = *b.props;
    if (pa.sharing != pb.sharing) {
        eq.kind = Equivalence::Kind::Conflict;
        eq.reason = "sharing differs (" + std::string(to_string(pa.sharing)) + " vs " +
                    std::string(to_string(pb.sharing)) + ")";
        return eq;
    }
    if (pa.transportation != pb.transportation) {
        eq.kind = Equivalence::Kind::Conflict;
        eq.reason = "transportation differs ('" + pa.transportation + "' vs '" +
                    pb.transportation + "')";
        return eq;
    }
    if (pa.order != pb.order) {
        eq.kind = Equivalence::Kind::Conflict;
        eq.reason = "order differs (" + std::string(to_string(pa.order)) + " vs " +
                    std::string(to_string(pb.order)) + ")";
        return eq;
    }
    if (pa.parameters.size() != pb.parameters.size()) {
        eq.kind = Equivalence::Kind::Conflict;
        eq.reason = "parameter set differs (" + std::to_string(pa.parameters.size()) + " vs " +
                    std::to_string(pb.parameters.size()) + " parameters)";
        return eq;
    }
    for (std::size_t i = 0; i < pa.parameters.size(); ++i) {
        const auto& left = pa.parameters[i];
        const auto& right = pb.parameters[i];
        if (!parameters_equal_ignoring_semantics(left, right)) {
            eq.kind = Equivalence::Kind::Conflict;
            eq.reason = left.name == right.name
                            ? "parameter '" + left.name + "' differs"
                            : "parameter set differs ('" + left.name + "' vs '" + right.name +
                                  "' at position " + std::to_string(i + 1) + ")";
            return eq;
        }
        if (left.semantics != right.semantics) {
            eq.warnings.push_back("semantics text differs for parameter '" + left.name + "'");
        }
    }
    return eq;
}

// ---------------------------------------------------------------------------
// Extension policy

namespace {

template <typename Class, typename FindFn, typename ExtensionFn>
std::optional<PolicyViolation> check_policy_impl(const Class& candidate,
                                                 std::span<const std::string> parent_path,
                                                 const std::vector<Class>& roots,
                                                 std::string_view root_name, FindFn find_class,
                                                 const char* extension_rule,
                                                 ExtensionFn is_extension,
                                                 const char* extension_hint) {
    const std::vector<Class>* level = &roots;
    if (!parent_path.empty()) {
        const Class* parent = find_class(roots, parent_path);
        if (!parent) {
            return PolicyViolation{rules::kMergeAncestryMismatch,
                                   "parent '" + std::string(root_name) + "." +
                                       join_path(parent_path) +
                                       "' is absent from the current FOM"};
        }
        level = &parent->children;
    }
    const Class* existing = nullptr;
    for (const auto& node : *level) {
        if (node.name == candidate.name) {
            existing = &node;
            break;
        }
    }
    if (!existing) return std::nullopt;  // new root-level class or new subclass

    const Equivalence eq = classes_equivalent(*existing, candidate);
    if (eq.kind == Equivalence::Kind::Conflict) {
        if (is_extension(*existing, candidate)) {
            return PolicyViolation{extension_rule, extension_hint};
        }
        return PolicyViolation{rules::kMergeClassConflict,
                               "conflicting duplicate of an existing class: " + eq.reason};
    }
    return std::nullopt;  // identical or scaffolding duplicates merge, no violation
}

}  // namespace

std::optional<PolicyViolation> check_extension_policy(const ObjectClassDef& candidate,
                                                      std::span<const std::string> parent_path,
                                                      const CurrentFom& current) {
    return check_policy_impl(
        candidate, parent_path, current.merged_model.object_root_children, kObjectRootName,
        [](const std::vector<ObjectClassDef>& roots, std::span<const std::string> path) {
            return find_object_class(roots, path);
        },
        rules::kMergeAttributeExtension, is_attribute_extension,
        "adding attributes to an existing class is not permitted; extend by adding a subclass "
        "instead");
}

std::optional<PolicyViolation> check_extension_policy(const InteractionClassDef& candidate,
                                                      std::span<const std::string> parent_path,
                                                      const CurrentFom& current) {
    return check_policy_impl(
        candidate, parent_path, current.merged_model.interaction_root_children,
        kInteractionRootName,
        [](const std::vector<InteractionClassDef>& roots, std::span<const std::string> path) {
            return find_interaction_class(roots, path);
        },
        rules::kMergeParameterExtension, is_parameter_extension,
        "adding parameters to an existing interaction class is not permitted; extend by adding "
        "a subclass instead");
}

// ---------------------------------------------------------------------------
// Tree merge

namespace {

template <typename Class>
Class* find_child(std::vector<Class>& level, std::string_view name) {
    for (auto& node : level) {
        if (node.name == name) return &node;
    }
    return nullptr;
}

template <typename Class, typename ExtensionFn>
std::optional<Rejection> merge_tree_level(std::vector<Class>& current,
                                          const std::vector<Class>& incoming,
                                          const std::string& parent_fqn, MergeReport& report,
                                          const std::string& module_name,
                                          const char* extension_rule, ExtensionFn is_extension) {
    for (const auto& inc : incoming) {
        const std::string fqn = child_fqn(parent_fqn, inc.name);
        Class* existing = find_child(current, inc.name);
        if (existing) {
            const Equivalence eq = classes_equivalent(*existing, inc);
            for (const auto& warning : eq.warnings) {
                report.warnings.push_back(fqn + ": " + warning);
            }
            switch (eq.kind) {
                case Equivalence::Kind::Identical:
                case Equivalence::Kind::ScaffoldingOfRight:
                    report.duplicate_classes_ignored.push_back(fqn);
                    break;
                case Equivalence::Kind::ScaffoldingOfLeft:
                    existing->props = inc.props;  // the regular definition wins
                    report.scaffolding_resolved.push_back(fqn);
                    break;
                case Equivalence::Kind::Conflict: {
                    const char* rule =
                        is_extension(*existing, inc) ? extension_rule : rules::kMergeClassConflict;
                    return Rejection{module_name, fqn, rule, eq.reason};
                }
            }
            if (auto rejection = merge_tree_level(existing->children, inc.children, fqn, report,
                                                  module_name, extension_rule, is_extension)) {
                return rejection;
            }
        } else {
            // New class at this position: a root-level addition or a new
            // subclass of the (already merged) parent. Siblings stay in
            // name order so the merged result is independent of load order.
            Class inserted;
            inserted.name = inc.name;
            inserted.props = inc.props;
            const auto position = std::lower_bound(
                current.begin(), current.end(), inc.name,
                [](const Class& node, const std::string& name) { return node.name < name; });
            auto it = current.insert(position, std::move(inserted));
            report.added_classes.push_back(fqn);
            if (auto rejection = merge_tree_level(it->children, inc.children, fqn, report,
                                                  module_name, extension_rule, is_extension)) {
                return rejection;
            }
        }
    }
    return std::nullopt;
}

std::optional<Rejection> merge_object_trees(std::vector<ObjectClassDef>& current,
                                            const std::vector<ObjectClassDef>& incoming,
                                            MergeReport& report, const std::string& module_name) {
    return merge_tree_level(current, incoming, std::string(kObjectRootName), report, module_name,
                            rules::kMergeAttributeExtension, is_attribute_extension);
}

std::optional<Rejection> merge_interaction_trees(std::vector<InteractionClassDef>& current,
                                                 const std::vector<InteractionClassDef>& incoming,
                                                 MergeReport& report,
                                                 const std::string& module_name) {
    return merge_tree_level(current, incoming, std::string(kInteractionRootName), report,
                            module_name, rules::kMergeParameterExtension, is_parameter_extension);
}

}  // namespace

ObjectTreeMergeResult merge_class_tree(const std::vector<ObjectClassDef>& current,
                                       const std::vector<ObjectClassDef>& incoming) {
    ObjectTreeMergeResult result;
    result.merged = current;
    result.fragment.rejection = merge_object_trees(result.merged, incoming, result.fragment, "");
    return result;
}

InteractionTreeMergeResult merge_class_tree(const std::vector<InteractionClassDef>& current,
                                            const std::vector<InteractionClassDef>& incoming) {
    InteractionTreeMergeResult result;
    result.merged = current;
    result.fragment.rejection =
        merge_interaction_trees(result.merged, incoming, result.fragment, "");
    return result;
}

// ---------------------------------------------------------------------------
// Table merge

namespace {

// equivalent(existing, incoming) returns a conflict reason, or nullopt when
// the duplicate is ignorable; it may push warnings.
template <typename T, typename KeyFn, typename EquivalentFn>
std::optional<Rejection> merge_one_table(std::vector<T>& target, const std::vector<T>& incoming,
                                         const char* table_name, KeyFn key,
                                         EquivalentFn equivalent, MergeReport& report,
                                         const std::string& module_name) {
    for (const auto& entry : incoming) {
        const std::string entry_key(key(entry));
        T* existing = nullptr;
        for (auto& candidate : target) {
            if (std::string_view(key(candidate)) == entry_key) {
                existing = &candidate;
                break;
            }
        }
        if (!existing) {
            const auto position = std::lower_bound(
                target.begin(), target.end(), entry_key,
                [&](const T& node, const std::string& k) { return std::string(key(node)) < k; });
            target.insert(position, entry);
            report.add_table_entry(table_name, entry_key);
            continue;
        }
        if (auto reason = equivalent(*existing, entry)) {
            return Rejection{module_name, entry_key, rules::kMergeTableConflict,
                             std::string(table_name) + " '" + entry_key + "': " + *reason};
        }
    }
    return std::nullopt;
}

std::optional<Rejection> merge_all_tables(ObjectModule& target, const ObjectModule& incoming,
                                          MergeReport& report, const std::string& module_name) {
    auto by_name = [](const auto& entry) { return std::string_view(entry.name); };
    auto by_label = [](const auto& entry) { return std::string_view(entry.label); };

    if (auto r = merge_one_table(
            target.data_types, incoming.data_types, "dataTypes", by_name,
            [](const DataTypeDef& a, const DataTypeDef& b) -> std::optional<std::string> {
                if (a.category != b.category) {
                    return "category differs (" + std::string(to_string(a.category)) + " vs " +
                           std::string(to_string(b.category)) + ")";
                }
                if (a.definition != b.definition) return std::string("definition differs");
                return std::nullopt;
            },
            report, module_name)) {
        return r;
    }
    if (auto r = merge_one_table(
            target.dimensions, incoming.dimensions, "dimensions", by_name,
            [](const Dimension& a, const Dimension& b) -> std::optional<std::string> {
                if (a.upper_bound != b.upper_bound) {
                    return "upperBound differs (" + std::to_string(a.upper_bound) + " vs " +
                           std::to_string(b.upper_bound) + ")";
                }
                return std::nullopt;
            },
            report, module_name)) {
        return r;
    }
    if (auto r = merge_one_table(
            target.transportations, incoming.transportations, "transportations", by_name,
            [](const Transportation& a, const Transportation& b) -> std::optional<std::string> {
                if (a.reliability != b.reliability) {
                    return "reliability differs (" + std::string(to_string(a.reliability)) +
                           " vs " + std::string(to_string(b.reliability)) + ")";
                }
                return std::nullopt;
            },
            report, module_name)) {
        return r;
    }
    if (auto r = merge_one_table(
            target.synchronization_points, incoming.synchronization_points, "synchronizations",
            by_label,
            [&report](const SynchronizationPoint& a,
                      const SynchronizationPoint& b) -> std::optional<std::string> {
                if (a.tag_data_type != b.tag_data_type) {
                    return "tagDataType differs ('" + a.tag_data_type + "' vs '" +
                           b.tag_data_type + "')";
                }
                if (a.semantics != b.semantics) {
                    report.warnings.push_back("synchronization '" + a.label +
                                              "': semantics text differs");
                }
                return std::nullopt;
            },
            report, module_name)) {
        return r;
    }
    if (auto r = merge_one_table(
            target.update_rates, incoming.update_rates, "updateRates", by_name,
            [](const UpdateRate& a, const UpdateRate& b) -> std::optional<std::string> {
                if (a.rate_hz != b.rate_hz) {
                    return "rateHz differs (" + a.rate_hz + " vs " + b.rate_hz + ")";
                }
                return std::nullopt;
            },
            report, module_name)) {
        return r;
    }
    if (auto r = merge_one_table(
            target.notes, incoming.notes, "notes", by_label,
            [](const NoteEntry& a, const NoteEntry& b) -> std::optional<std::string> {
                if (a.body != b.body) return std::string("note body differs for the same label");
                return std::nullopt;
            },
            report, module_name)) {
        return r;
    }

    // Switches is a singleton table: exact equality when both sides carry
    // one, adoption when only one side does.
    if (incoming.switches) {
        if (!target.switches) {
            target.switches = incoming.switches;
            report.add_table_entry("switches", "switches");
        } else if (!(*target.switches == *incoming.switches)) {
            return Rejection{module_name, "switches", rules::kMergeSwitchesMismatch,
                             "switches tables are not exactly equal"};
        }
    }
    return std::nullopt;
}

}  // namespace

TableMergeResult merge_tables(const ObjectModule& current, const ObjectModule& incoming) {
    TableMergeResult result;
    result.merged = current;
    result.fragment.rejection =
        merge_all_tables(result.merged, incoming, result.fragment, incoming.identification.name);
    return result;
}

// ---------------------------------------------------------------------------
// Scaffolding and reference scans

namespace {

template <typename Class>
void collect_scaffolding(const std::vector<Class>& nodes, const std::string& prefix,
                         std::vector<std::string>& out) {
    for (const auto& node : nodes) {
        const std::string fqn = child_fqn(prefix, node.name);
        if (node.is_scaffolding()) out.push_back(fqn);
        collect_scaffolding(node.children, fqn, out);
    }
}

void check_attribute_refs(const ObjectModule& m, const AttributeDef& attr,
                          const std::string& owner, std::vector<std::string>& out) {
    if (!m.find_data_type(attr.data_type)) {
        out.push_back("attribute '" + owner + "." + attr.name + "' references unknown dataType '" +
                      attr.data_type + "'");
    }
    if (!m.find_transportation(attr.transportation)) {
        out.push_back("attribute '" + owner + "." + attr.name +
                      "' references unknown transportation '" + attr.transportation + "'");
    }
    for (const auto& dim : attr.dimensions) {
        if (!m.find_dimension(dim)) {
            out.push_back("attribute '" + owner + "." + attr.name +
                          "' references unknown dimension '" + dim + "'");
        }
    }
}

void check_object_refs(const ObjectModule& m, const std::vector<ObjectClassDef>& nodes,
                       const std::string& prefix, std::vector<std::string>& out) {
    for (const auto& node : nodes) {
        const std::string fqn = child_fqn(prefix, node.name);
        if (!node.is_scaffolding()) {
            for (const auto& attr : node.props->attributes) {
                check_attribute_refs(m, attr, fqn, out);
            }
        }
        check_object_refs(m, node.children, fqn, out);
    }
}

void check_interaction_refs(const ObjectModule& m, const std::vector<InteractionClassDef>& nodes,
                            const std::string& prefix, std::vector<std::string>& out) {
    for (const auto& node : nodes) {
        const std::string fqn = child_fqn(prefix, node.name);
        if (!node.is_scaffolding()) {
            if (!m.find_transportation(node.props->transportation)) {
                out.push_back("interaction '" + fqn + "' references unknown transportation '" +
                              node.props->transportation + "'");
            }
            for (const auto& param : node.props->parameters) {
                if (!m.find_data_type(param.data_type)) {
                    out.push_back("parameter '" + fqn + "." + param.name +
                                  "' references unknown dataType '" + param.data_type + "'");
                }
            }
        }
        check_interaction_refs(m, node.children, fqn, out);
    }
}

}  // namespace

std::vector<std::string> unresolved_scaffolding(const ObjectModule& m) {
    std::vector<std::string> out;
    collect_scaffolding(m.object_root_children, std::string(kObjectRootName), out);
    collect_scaffolding(m.interaction_root_children, std::string(kInteractionRootName), out);
    return out;
}

std::vector<std::string> unresolved_references(const ObjectModule& m) {
    std::vector<std::string> out;
    for (const auto& attr : m.object_root_attributes) {
        check_attribute_refs(m, attr, std::string(kObjectRootName), out);
    }
    check_object_refs(m, m.object_root_children, std::string(kObjectRootName), out);
    check_interaction_refs(m, m.interaction_root_children, std::string(kInteractionRootName), out);
    for (const auto& sync : m.synchronization_points) {
        if (!m.find_data_type(sync.tag_data_type)) {
            out.push_back("synchronization '" + sync.label + "' references unknown tagDataType '" +
                          sync.tag_data_type + "'");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Normalization, handles, identification

namespace {

template <typename Class>
void sort_tree(std::vector<Class>& nodes) {
    std::sort(nodes.begin(), nodes.end(),
              [](const Class& a, const Class& b) { return a.name < b.name; });
    for (auto& node : nodes) sort_tree(node.children);
}

void normalize_merged_model(ObjectModule& m) {
    sort_tree(m.object_root_children);
    sort_tree(m.interaction_root_children);
    auto by_name = [](const auto& a, const auto& b) { return a.name < b.name; };
    auto by_label = [](const auto& a, const auto& b) { return a.label < b.label; };
    std::sort(m.data_types.begin(), m.data_types.end(), by_name);
    std::sort(m.dimensions.begin(), m.dimensions.end(), by_name);
    std::sort(m.transportations.begin(), m.transportations.end(), by_name);
    std::sort(m.update_rates.begin(), m.update_rates.end(), by_name);
    std::sort(m.synchronization_points.begin(), m.synchronization_points.end(), by_label);
    std::sort(m.notes.begin(), m.notes.end(), by_label);
}

template <typename Class>
void assign_class_handles(const std::vector<Class>& nodes, const std::string& prefix,
                          HandleTable& classes) {
    for (const auto& node : nodes) {
        const std::string fqn = child_fqn(prefix, node.name);
        if (!classes.find(fqn)) classes.assign(fqn);
        assign_class_handles(node.children, fqn, classes);
    }
}

void assign_attribute_handles(const std::vector<ObjectClassDef>& nodes, const std::string& prefix,
                              HandleTable& attributes) {
    for (const auto& node : nodes) {
        const std::string fqn = child_fqn(prefix, node.name);
        if (!node.is_scaffolding()) {
            for (const auto& attr : node.props->attributes) {
                const std::string attr_fqn = child_fqn(fqn, attr.name);
                if (!attributes.find(attr_fqn)) attributes.assign(attr_fqn);
            }
        }
        assign_attribute_handles(node.children, fqn, attributes);
    }
}

// New fully-qualified names receive consecutive handles in depth-first
// order of the merged result, continuing from the previous maximum.
void assign_new_handles(CurrentFom& fom) {
    const std::string object_root(kObjectRootName);
    const std::string interaction_root(kInteractionRootName);

    if (!fom.object_class_handles.find(object_root)) fom.object_class_handles.assign(object_root);
    assign_class_handles(fom.merged_model.object_root_children, object_root,
                         fom.object_class_handles);

    if (!fom.interaction_class_handles.find(interaction_root)) {
        fom.interaction_class_handles.assign(interaction_root);
    }
    assign_class_handles(fom.merged_model.interaction_root_children, interaction_root,
                         fom.interaction_class_handles);

    for (const auto& attr : fom.merged_model.object_root_attributes) {
        const std::string attr_fqn = child_fqn(object_root, attr.name);
        if (!fom.attribute_handles.find(attr_fqn)) fom.attribute_handles.assign(attr_fqn);
    }
    assign_attribute_handles(fom.merged_model.object_root_children, object_root,
                             fom.attribute_handles);
}

std::vector<std::string> sorted_unique(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

void rewrite_composed_identification(CurrentFom& fom) {
    auto& id = fom.merged_model.identification;
    id.name = "CurrentFOM";
    id.model_type = ModelType::Fom;
    id.version = "1.0";
    id.references.clear();
    if (!fom.module_designators.empty()) {
        Reference composed;
        composed.type = ReferenceType::ComposedFrom;
        composed.identifications = sorted_unique(fom.module_designators);
        id.references.push_back(std::move(composed));
    }
}

// The module of a load set that declares `fqn` as scaffolding; used to
// attribute an unresolved-scaffolding rejection.
std::string scaffolding_source(std::span<const ObjectModule> load_set, const std::string& fqn) {
    const std::vector<std::string> segments = split_path(fqn);
    if (segments.size() < 2) return {};
    const bool objects = segments.front() == kObjectRootName;
    const std::span<const std::string> relative(segments.data() + 1, segments.size() - 1);
    for (const auto& module : load_set) {
        if (objects) {
            const auto* cls = find_object_class(module.object_root_children, relative);
            if (cls && cls->is_scaffolding()) return module.identification.name;
        } else {
            const auto* cls = find_interaction_class(module.interaction_root_children, relative);
            if (cls && cls->is_scaffolding()) return module.identification.name;
        }
    }
    return {};
}

std::string joined(const std::vector<std::string>& items, std::size_t limit = 8) {
    std::string out;
    for (std::size_t i = 0; i < items.size() && i < limit; ++i) {
        if (!out.empty()) out += ", ";
        out += items[i];
    }
    if (items.size() > limit) out += ", and " + std::to_string(items.size() - limit) + " more";
    return out;
}

}  // namespace

MergeOutcome merge_modules(const CurrentFom& current, std::span<const ObjectModule> load_set) {
    MergeOutcome out{current, {}};
    auto reject = [&](Rejection rejection) {
        out.fom = current;
        out.report = MergeReport{};
        out.report.rejection = std::move(rejection);
        return out;
    };

    if (load_set.empty()) {
        return reject({"", "", rules::kMergeInvalidModule, "load set is empty"});
    }

    CurrentFom working = current;
    MergeReport report;

    for (const auto& module : load_set) {
        const std::string& name = module.identification.name;
        const ModelType type = module.identification.model_type;
        if (type == ModelType::Mim) {
            return reject({name, "", rules::kMergeMimNotLoadable,
                           "exactly one MIM belongs to a federation execution and it is supplied "
                           "at creation; a MIM is not loadable afterwards"});
        }
        if (type != ModelType::FomModule && type != ModelType::SomModule) {
            return reject({name, "", rules::kMergeInvalidModule,
                           "composed models are not loadable modules (modelType " +
                               std::string(to_string(type)) + ")"});
        }
        const auto violations = check_module_invariants(module);
        if (!violations.empty()) {
            return reject({name, "", rules::kMergeInvalidModule,
                           violations.front().rule_id + ": " + violations.front().message});
        }

        // Repeated description: identical name+version loads as a no-op,
        // but the content must genuinely match.
        const std::string canonical = serialize_module(module);
        bool repeated = false;
        for (const auto& record : working.loaded_modules) {
            if (record.name != name) continue;
            if (record.version != module.identification.version) {
                return reject({name, "", rules::kMergeDesignatorClash,
                               "module '" + name + "' is already loaded with version '" +
                                   record.version + "'; cannot load version '" +
                                   module.identification.version + "'"});
            }
            if (record.canonical_document != canonical) {
                return reject({name, "", rules::kMergeDesignatorClash,
                               "module '" + name + "' version '" + record.version +
                                   "' is already loaded with different content"});
            }
            repeated = true;
            break;
        }
        if (repeated) {
            report.warnings.push_back("module '" + name +
                                      "' already loaded; repeated description ignored");
            continue;
        }

        if (auto rejection = merge_object_trees(working.merged_model.object_root_children,
                                                module.object_root_children, report, name)) {
            return reject(std::move(*rejection));
        }
        if (auto rejection =
                merge_interaction_trees(working.merged_model.interaction_root_children,
                                        module.interaction_root_children, report, name)) {
            return reject(std::move(*rejection));
        }
        if (auto rejection = merge_all_tables(working.merged_model, module, report, name)) {
            return reject(std::move(*rejection));
        }

        working.module_designators.push_back(name);
        working.loaded_modules.push_back(
            LoadedModuleRecord{name, module.identification.version, canonical});
    }

    // Scaffolding must be fully resolved by the end of the atomic load set,
    // and the merged model must be usable as a FOM document: no dangling
    // name references.
    const auto scaffolding = unresolved_scaffolding(working.merged_model);
    if (!scaffolding.empty()) {
        return reject({scaffolding_source(load_set, scaffolding.front()), scaffolding.front(),
                       rules::kMergeUnresolvedScaffolding,
                       "scaffolding unresolved after the load set: " + joined(scaffolding)});
    }
    const auto dangling = unresolved_references(working.merged_model);
    if (!dangling.empty()) {
        return reject({"", dangling.front(), rules::kMergeDanglingReference,
                       "unresolved name references after the load set: " + joined(dangling)});
    }

    assign_new_handles(working);
    rewrite_composed_identification(working);
    working.generation += 1;

    out.fom = std::move(working);
    out.report = std::move(report);
    return out;
}

Expected<CurrentFom, Rejection> initial_current_fom(const ObjectModule& mim) {
    const std::string& name = mim.identification.name;
    if (mim.identification.model_type != ModelType::Mim) {
        return Rejection{name, "", rules::kMergeInvalidModule,
                         "the base module of a federation execution must have modelType MIM"};
    }
    const auto violations = check_module_invariants(mim);
    if (!violations.empty()) {
        return Rejection{name, "", rules::kMergeInvalidModule,
                         violations.front().rule_id + ": " + violations.front().message};
    }
    const auto scaffolding = unresolved_scaffolding(mim);
    if (!scaffolding.empty()) {
        return Rejection{name, scaffolding.front(), rules::kMergeInvalidModule,
                         "a MIM must be self-contained; scaffolding found: " + joined(scaffolding)};
    }
    const auto dangling = unresolved_references(mim);
    if (!dangling.empty()) {
        return Rejection{name, dangling.front(), rules::kMergeDanglingReference,
                         "a MIM must be self-contained; unresolved references: " + joined(dangling)};
    }

    CurrentFom fom;
    fom.merged_model = mim;
    normalize_merged_model(fom.merged_model);
    fom.mim_designator = name;
    rewrite_composed_identification(fom);
    assign_new_handles(fom);
    return fom;
}

// ---------------------------------------------------------------------------
// Diff

bool FomDiff::empty() const {
    if (!identification_changes.empty()) return false;
    if (!added_classes.empty() || !removed_classes.empty() || !changed_classes.empty()) {
        return false;
    }
    if (!added_attributes.empty() || !removed_attributes.empty() || !changed_attributes.empty()) {
        return false;
    }
    for (const auto& table : tables) {
        if (!table.empty()) return false;
    }
    return true;
}

namespace {

class DiffBuilder {
public:
    DiffBuilder(const ObjectModule& a, const ObjectModule& b) : a_(a), b_(b) {}

    FomDiff run() {
        compare_identification();
        compare_attribute_lists(std::string(kObjectRootName), a_.object_root_attributes,
                                b_.object_root_attributes);
        compare_object_level(std::string(kObjectRootName), a_.object_root_children,
                             b_.object_root_children);
        compare_interaction_level(std::string(kInteractionRootName), a_.interaction_root_children,
                                  b_.interaction_root_children);
        compare_tables();
        return std::move(diff_);
    }

private:
    void compare_identification() {
        const auto& ia = a_.identification;
        const auto& ib = b_.identification;
        if (ia.name != ib.name) diff_.identification_changes.push_back("name");
        if (ia.model_type != ib.model_type) diff_.identification_changes.push_back("modelType");
        if (ia.version != ib.version) diff_.identification_changes.push_back("version");
        if (!(ia.references == ib.references)) diff_.identification_changes.push_back("references");
    }

    void mark_changed(const std::string& fqn) {
        if (std::find(diff_.changed_classes.begin(), diff_.changed_classes.end(), fqn) ==
            diff_.changed_classes.end()) {
            diff_.changed_classes.push_back(fqn);
        }
    }

    template <typename T, typename KeyFn>
    bool common_order_differs(const std::vector<T>& va, const std::vector<T>& vb, KeyFn key) {
        auto contains = [&](const std::vector<T>& v, std::string_view k) {
            return std::any_of(v.begin(), v.end(), [&](const T& item) {
                return std::string_view(key(item)) == k;
            });
        };
        std::vector<std::string> in_a;
        std::vector<std::string> in_b;
        for (const auto& item : va) {
            if (contains(vb, key(item))) in_a.emplace_back(key(item));
        }
        for (const auto& item : vb) {
            if (contains(va, key(item))) in_b.emplace_back(key(item));
        }
        return in_a != in_b;
    }

    template <typename T>
    static const T* find_by_name(const std::vector<T>& v, std::string_view name) {
        for (const auto& item : v) {
            if (item.name == name) return &item;
        }
        return nullptr;
    }

    void compare_attribute_lists(const std::string& owner, const std::vector<AttributeDef>& va,
                                 const std::vector<AttributeDef>& vb) {
        for (const auto& attr : va) {
            const auto* other = find_by_name(vb, attr.name);
            if (!other) {
                diff_.removed_attributes.push_back(owner + "." + attr.name);
            } else if (!(attr == *other)) {
                diff_.changed_attributes.push_back(owner + "." + attr.name);
            }
        }
        for (const auto& attr : vb) {
            if (!find_by_name(va, attr.name)) {
                diff_.added_attributes.push_back(owner + "." + attr.name);
            }
        }
        if (common_order_differs(va, vb, [](const AttributeDef& a) { return a.name; })) {
            mark_changed(owner);
        }
    }

    void compare_parameter_lists(const std::string& owner, const std::vector<ParameterDef>& va,
                                 const std::vector<ParameterDef>& vb) {
        for (const auto& param : va) {
            const auto* other = find_by_name(vb, param.name);
            if (!other) {
                diff_.removed_attributes.push_back(owner + "." + param.name);
            } else if (!(param == *other)) {
                diff_.changed_attributes.push_back(owner + "." + param.name);
            }
        }
        for (const auto& param : vb) {
            if (!find_by_name(va, param.name)) {
                diff_.added_attributes.push_back(owner + "." + param.name);
            }
        }
        if (common_order_differs(va, vb, [](const ParameterDef& p) { return p.name; })) {
            mark_changed(owner);
        }
    }

    template <typename Class>
    static void collect_subtree(const Class& node, const std::string& prefix,
                                std::vector<std::string>& out) {
        const std::string fqn = prefix + "." + node.name;
        out.push_back(fqn);
        for (const auto& child : node.children) collect_subtree(child, fqn, out);
    }

    void compare_object_level(const std::string& parent, const std::vector<ObjectClassDef>& va,
                              const std::vector<ObjectClassDef>& vb) {
        for (const auto& node : va) {
            const std::string fqn = parent + "." + node.name;
            const auto* other = find_by_name(vb, node.name);
            if (!other) {
                collect_subtree(node, parent, diff_.removed_classes);
                continue;
            }
            if (node.is_scaffolding() != other->is_scaffolding()) {
                mark_changed(fqn);
            } else if (!node.is_scaffolding()) {
                if (node.props->sharing != other->props->sharing) mark_changed(fqn);
                compare_attribute_lists(fqn, node.props->attributes, other->props->attributes);
            }
            if (common_order_differs(node.children, other->children,
                                     [](const ObjectClassDef& c) { return c.name; })) {
                mark_changed(fqn);
            }
            compare_object_level(fqn, node.children, other->children);
        }
        for (const auto& node : vb) {
            if (!find_by_name(va, node.name)) collect_subtree(node, parent, diff_.added_classes);
        }
        if (common_order_differs(va, vb, [](const ObjectClassDef& c) { return c.name; })) {
            mark_changed(parent);
        }
    }

    void compare_interaction_level(const std::string& parent,
                                   const std::vector<InteractionClassDef>& va,
                                   const std::vector<InteractionClassDef>& vb) {
        for (const auto& node : va) {
            const std::string fqn = parent + "." + node.name;
            const auto* other = find_by_name(vb, node.name);
            if (!other) {
                collect_subtree(node, parent, diff_.removed_classes);
                continue;
            }
            if (node.is_scaffolding() != other->is_scaffolding()) {
                mark_changed(fqn);
            } else if (!node.is_scaffolding()) {
                if (node.props->sharing != other->props->sharing ||
                    node.props->transportation != other->props->transportation ||
                    node.props->order != other->props->order) {
                    mark_changed(fqn);
                }
                compare_parameter_lists(fqn, node.props->parameters, other->props->parameters);
            }
            if (common_order_differs(node.children, other->children,
                                     [](const InteractionClassDef& c) { return c.name; })) {
                mark_changed(fqn);
            }
            compare_interaction_level(fqn, node.children, other->children);
        }
        for (const auto& node : vb) {
            if (!find_by_name(va, node.name)) collect_subtree(node, parent, diff_.added_classes);
        }
        if (common_order_differs(va, vb, [](const InteractionClassDef& c) { return c.name; })) {
            mark_changed(parent);
        }
    }

    template <typename T, typename KeyFn>
    void compare_one_table(const char* table_name, const std::vector<T>& va,
                           const std::vector<T>& vb, KeyFn key) {
        TableDiff table;
        table.table = table_name;
        auto find = [&](const std::vector<T>& v, std::string_view k) -> const T* {
            for (const auto& item : v) {
                if (std::string_view(key(item)) == k) return &item;
            }
            return nullptr;
        };
        for (const auto& item : va) {
            const T* other = find(vb, key(item));
            if (!other) {
                table.removed.emplace_back(key(item));
            } else if (!(item == *other)) {
                table.changed.emplace_back(key(item));
            }
        }
        for (const auto& item : vb) {
            if (!find(va, key(item))) table.added.emplace_back(key(item));
        }
        table.order_changed = common_order_differs(va, vb, key);
        if (!table.empty()) diff_.tables.push_back(std::move(table));
    }

    void compare_tables() {
        auto by_name = [](const auto& entry) { return std::string_view(entry.name); };
        auto by_label = [](const auto& entry) { return std::string_view(entry.label); };
        compare_one_table("dataTypes", a_.data_types, b_.data_types, by_name);
        compare_one_table("dimensions", a_.dimensions, b_.dimensions, by_name);
        compare_one_table("transportations", a_.transportations, b_.transportations, by_name);
        compare_one_table("synchronizations", a_.synchronization_points,
                          b_.synchronization_points, by_label);
        compare_one_table("updateRates", a_.update_rates, b_.update_rates, by_name);
        compare_one_table("notes", a_.notes, b_.notes, by_label);

        TableDiff switches;
        switches.table = "switches";
        if (a_.switches && !b_.switches) {
            switches.removed.push_back("switches");
        } else if (!a_.switches && b_.switches) {
            switches.added.push_back("switches");
        } else if (a_.switches && b_.switches && !(*a_.switches == *b_.switches)) {
            const Switches& sa = *a_.switches;
            const Switches& sb = *b_.switches;
            if (sa.auto_provide != sb.auto_provide) switches.changed.push_back("autoProvide");
            if (sa.attribute_scope_advisory != sb.attribute_scope_advisory) {
                switches.changed.push_back("attributeScopeAdvisory");
            }
            if (sa.attribute_relevance_advisory != sb.attribute_relevance_advisory) {
                switches.changed.push_back("attributeRelevanceAdvisory");
            }
            if (sa.object_class_relevance_advisory != sb.object_class_relevance_advisory) {
                switches.changed.push_back("objectClassRelevanceAdvisory");
            }
            if (sa.interaction_relevance_advisory != sb.interaction_relevance_advisory) {
                switches.changed.push_back("interactionRelevanceAdvisory");
            }
            if (sa.service_reporting != sb.service_reporting) {
                switches.changed.push_back("serviceReporting");
            }
        }
        if (!switches.empty()) diff_.tables.push_back(std::move(switches));
    }

    const ObjectModule& a_;
    const ObjectModule& b_;
    FomDiff diff_;
};

}  // namespace

FomDiff diff_foms(const ObjectModule& a, const ObjectModule& b) {
    return DiffBuilder(a, b).run();
}

}  // namespace fomforge
