#pragma once

#include <span>

#include "fomforge/expected.hpp"
#include "fomforge/model.hpp"

// Module composition: duplicate detection, equivalence checking,
// scaffolding resolution, extension-policy enforcement, table merging,
// atomic multi-module loads, and structural diffs.

namespace fomforge {

// ---------------------------------------------------------------------------
// Class equivalence

struct Equivalence {
    enum class Kind {
        Identical,
        ScaffoldingOfLeft,   // left side is the scaffolding description
        ScaffoldingOfRight,  // right side is the scaffolding description
        Conflict,
    };
    Kind kind = Kind::Identical;
    std::string reason;                 // set for Conflict
    std::vector<std::string> warnings;  // semantics-text mismatches

    bool identical() const { return kind == Kind::Identical; }
};

// Pre: a.name == b.name at the same fully-qualified position. Semantics
// text never conflicts; differences surface as warnings.
Equivalence classes_equivalent(const ObjectClassDef& a, const ObjectClassDef& b);
Equivalence classes_equivalent(const InteractionClassDef& a, const InteractionClassDef& b);

// ---------------------------------------------------------------------------
// Extension policy

struct PolicyViolation {
    std::string rule_id;
    std::string reason;
};

// A candidate extension is acceptable when it introduces a new root-level
// class or a new subclass of an existing class. Re-declaring an existing
// class with extra attributes (or an interaction with extra parameters) is
// the disallowed in-place extension and yields a violation. parent_path is
// relative to the implicit root; nullopt means ok.
std::optional<PolicyViolation> check_extension_policy(const ObjectClassDef& candidate,
                                                      std::span<const std::string> parent_path,
                                                      const CurrentFom& current);
std::optional<PolicyViolation> check_extension_policy(const InteractionClassDef& candidate,
                                                      std::span<const std::string> parent_path,
                                                      const CurrentFom& current);

// ---------------------------------------------------------------------------
// Tree and table merging

struct ObjectTreeMergeResult {
    std::vector<ObjectClassDef> merged;
    MergeReport fragment;
};

struct InteractionTreeMergeResult {
    std::vector<InteractionClassDef> merged;
    MergeReport fragment;
};

// Top-down merge of one module's class tree into the current tree, both
// rooted at the same implicit root. Identical duplicates are ignored,
// regular definitions win over scaffolding, new classes are inserted in
// name order; conflicts reject with a diagnosis in fragment.rejection.
ObjectTreeMergeResult merge_class_tree(const std::vector<ObjectClassDef>& current,
                                       const std::vector<ObjectClassDef>& incoming);
InteractionTreeMergeResult merge_class_tree(const std::vector<InteractionClassDef>& current,
                                            const std::vector<InteractionClassDef>& incoming);

struct TableMergeResult {
    ObjectModule merged;  // current with table sections updated
    MergeReport fragment;
};

// Unions the flat tables. Entries new by name are inserted in name order;
// duplicates must be equivalent; the switches table must match exactly
// when both sides carry one.
TableMergeResult merge_tables(const ObjectModule& current, const ObjectModule& incoming);

// ---------------------------------------------------------------------------
// Atomic loads

struct MergeOutcome {
    CurrentFom fom;      // merged result, or the untouched input on rejection
    MergeReport report;

    bool accepted() const { return report.accepted(); }
};

// Applies the load set in order against a working copy. Any failure leaves
// the input untouched and reports which module and element failed. On
// success: scaffolding must be fully resolved, every name reference must
// resolve, new handles continue from the previous maximum in depth-first
// order of the merged result, and the composed-from reference lists every
// constituent module. Re-loading a module identical by name and version to
// an already-loaded one is a no-op.
MergeOutcome merge_modules(const CurrentFom& current, std::span<const ObjectModule> load_set);

// Builds the generation-zero current FOM from a MIM. The MIM must be
// self-contained: correct model type, no scaffolding, no dangling
// references.
Expected<CurrentFom, Rejection> initial_current_fom(const ObjectModule& mim);

// Name references that do not resolve within the module's own tables;
// empty for a usable FOM document.
std::vector<std::string> unresolved_references(const ObjectModule& m);

// Fully-qualified names of scaffolding classes, both trees.
std::vector<std::string> unresolved_scaffolding(const ObjectModule& m);

// ---------------------------------------------------------------------------
// Diff

struct TableDiff {
    std::string table;
    std::vector<std::string> added;
    std::vector<std::string> removed;
    std::vector<std::string> changed;
    bool order_changed = false;

    bool empty() const {
        return added.empty() && removed.empty() && changed.empty() && !order_changed;
    }
};

struct FomDiff {
    std::vector<std::string> identification_changes;  // field names
    std::vector<std::string> added_classes;           // present only in b
    std::vector<std::string> removed_classes;         // present only in a
    std::vector<std::string> changed_classes;
    std::vector<std::string> added_attributes;        // class fqn + "." + name
    std::vector<std::string> removed_attributes;
    std::vector<std::string> changed_attributes;
    std::vector<TableDiff> tables;

    bool empty() const;
};

// Symmetric difference at fully-qualified-name granularity; empty exactly
// when the canonical serializations of a and b are byte-equal.
FomDiff diff_foms(const ObjectModule& a, const ObjectModule& b);

}  // namespace fomforge
