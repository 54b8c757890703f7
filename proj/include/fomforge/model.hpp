#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Object-model domain types for modular federation object models: the
// module document model, the composed current FOM, and the built-in
// MOM-and-initialization module. Everything here is an immutable value
// after construction; merging lives in merge.hpp and I/O in io.hpp.

namespace fomforge {

// ---------------------------------------------------------------------------
// Identification

enum class ModelType { Fom, Som, FomModule, SomModule, Mim };

enum class ReferenceType { Standalone, Dependency, ComposedFrom, Other };

struct Reference {
    ReferenceType type = ReferenceType::Standalone;
    // Label for ReferenceType::Other (free text); empty otherwise.
    std::string other_label;
    // Module names; empty exactly when the reference is Standalone, which
    // renders as the literal token "NA" in documents.
    std::vector<std::string> identifications;

    friend bool operator==(const Reference&, const Reference&) = default;
};

struct ModelIdentification {
    std::string name;
    ModelType model_type = ModelType::FomModule;
    std::string version;
    std::vector<Reference> references;

    friend bool operator==(const ModelIdentification&, const ModelIdentification&) = default;
};

// ---------------------------------------------------------------------------
// Class trees

enum class Sharing { Publish, Subscribe, PublishSubscribe, Neither };
enum class OrderType { TimeStamp, Receive };

struct AttributeDef {
    std::string name;
    std::string data_type;
    std::string transportation;
    OrderType order = OrderType::Receive;
    std::vector<std::string> dimensions;
    std::string semantics;

    friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

struct ObjectClassProps {
    Sharing sharing = Sharing::Neither;
    std::vector<AttributeDef> attributes;

    friend bool operator==(const ObjectClassProps&, const ObjectClassProps&) = default;
};

// A class node is scaffolding when it carries no properties; scaffolding is
// a name-only placeholder whose regular definition lives in another module.
struct ObjectClassDef {
    std::string name;
    std::optional<ObjectClassProps> props;  // nullopt = scaffolding
    std::vector<ObjectClassDef> children;

    bool is_scaffolding() const { return !props.has_value(); }

    friend bool operator==(const ObjectClassDef&, const ObjectClassDef&) = default;
};

struct ParameterDef {
    std::string name;
    std::string data_type;
    std::string semantics;

    friend bool operator==(const ParameterDef&, const ParameterDef&) = default;
};

struct InteractionClassProps {
    Sharing sharing = Sharing::Neither;
    std::string transportation;
    OrderType order = OrderType::Receive;
    std::vector<ParameterDef> parameters;

    friend bool operator==(const InteractionClassProps&, const InteractionClassProps&) = default;
};

struct InteractionClassDef {
    std::string name;
    std::optional<InteractionClassProps> props;  // nullopt = scaffolding
    std::vector<InteractionClassDef> children;

    bool is_scaffolding() const { return !props.has_value(); }

    friend bool operator==(const InteractionClassDef&, const InteractionClassDef&) = default;
};

// ---------------------------------------------------------------------------
// Flat tables

enum class DataTypeCategory { Basic, Simple, Enumerated, Array, FixedRecord, Variant };

// Equivalent iff name, category and canonical definition text are
// byte-identical; the definition is stored whitespace-normalized.
struct DataTypeDef {
    std::string name;
    DataTypeCategory category = DataTypeCategory::Basic;
    std::string definition;

    friend bool operator==(const DataTypeDef&, const DataTypeDef&) = default;
};

struct Dimension {
    std::string name;
    std::uint64_t upper_bound = 1;

    friend bool operator==(const Dimension&, const Dimension&) = default;
};

enum class Reliability { Reliable, BestEffort };

struct Transportation {
    std::string name;
    Reliability reliability = Reliability::Reliable;

    friend bool operator==(const Transportation&, const Transportation&) = default;
};

struct SynchronizationPoint {
    std::string label;
    std::string tag_data_type;
    std::string semantics;

    friend bool operator==(const SynchronizationPoint&, const SynchronizationPoint&) = default;
};

// rate_hz is kept in canonical text form (no leading/trailing zero noise) so
// table equality is plain byte comparison.
struct UpdateRate {
    std::string name;
    std::string rate_hz;

    friend bool operator==(const UpdateRate&, const UpdateRate&) = default;
};

enum class SwitchValue { Enabled, Disabled };

// Singleton table; all six switches are present whenever the table is.
struct Switches {
    SwitchValue auto_provide = SwitchValue::Enabled;
    SwitchValue attribute_scope_advisory = SwitchValue::Enabled;
    SwitchValue attribute_relevance_advisory = SwitchValue::Enabled;
    SwitchValue object_class_relevance_advisory = SwitchValue::Enabled;
    SwitchValue interaction_relevance_advisory = SwitchValue::Enabled;
    SwitchValue service_reporting = SwitchValue::Enabled;

    friend bool operator==(const Switches&, const Switches&) = default;
};

struct NoteEntry {
    std::string label;
    std::string body;

    friend bool operator==(const NoteEntry&, const NoteEntry&) = default;
};

// ---------------------------------------------------------------------------
// Module

inline constexpr std::string_view kObjectRootName = "HLAobjectRoot";
inline constexpr std::string_view kInteractionRootName = "HLAinteractionRoot";
inline constexpr std::string_view kManagerClassName = "HLAmanager";

// One module document. The object/interaction roots are implicit: modules
// list the roots' children, and only composed models and the MIM may carry
// the object root's own attributes.
struct ObjectModule {
    ModelIdentification identification;
    std::vector<AttributeDef> object_root_attributes;  // MIM / composed models only
    std::vector<ObjectClassDef> object_root_children;
    std::vector<InteractionClassDef> interaction_root_children;
    std::vector<DataTypeDef> data_types;
    std::vector<Dimension> dimensions;
    std::vector<Transportation> transportations;
    std::vector<SynchronizationPoint> synchronization_points;
    std::vector<UpdateRate> update_rates;
    std::optional<Switches> switches;
    std::vector<NoteEntry> notes;

    const DataTypeDef* find_data_type(std::string_view name) const;
    const Dimension* find_dimension(std::string_view name) const;
    const Transportation* find_transportation(std::string_view name) const;
    const SynchronizationPoint* find_synchronization(std::string_view label) const;
    const UpdateRate* find_update_rate(std::string_view name) const;
    const NoteEntry* find_note(std::string_view label) const;

    friend bool operator==(const ObjectModule&, const ObjectModule&) = default;
};

// ---------------------------------------------------------------------------
// Current FOM

// Stable positive-integer handles keyed by fully-qualified name. Handles are
// assigned once and never recycled within one federation execution.
class HandleTable {
public:
    std::uint32_t assign(const std::string& fqn);
    std::optional<std::uint32_t> find(std::string_view fqn) const;
    std::optional<std::string> name_of(std::uint32_t handle) const;
    std::size_t size() const { return entries_.size(); }
    // Assignment-ordered view (fqn, handle).
    const std::vector<std::pair<std::string, std::uint32_t>>& entries() const { return entries_; }

    friend bool operator==(const HandleTable&, const HandleTable&) = default;

private:
    std::vector<std::pair<std::string, std::uint32_t>> entries_;
    std::uint32_t next_ = 1;
};

// Name + version + canonical bytes of a module already merged into a
// current FOM; used to recognize repeated descriptions.
struct LoadedModuleRecord {
    std::string name;
    std::string version;
    std::string canonical_document;

    friend bool operator==(const LoadedModuleRecord&, const LoadedModuleRecord&) = default;
};

// The stateful union of one MIM and every module loaded so far. The merged
// model is kept in a normalized form (siblings and table entries sorted by
// name) so that any load order of a compatible set produces byte-identical
// canonical documents.
struct CurrentFom {
    ObjectModule merged_model;
    std::vector<std::string> module_designators;  // load order
    std::string mim_designator;
    std::vector<LoadedModuleRecord> loaded_modules;
    HandleTable object_class_handles;
    HandleTable interaction_class_handles;
    HandleTable attribute_handles;
    std::uint64_t generation = 0;

    friend bool operator==(const CurrentFom&, const CurrentFom&) = default;
};

// ---------------------------------------------------------------------------
// Merge reporting

struct Rejection {
    std::string module;   // module name (designator) the failure belongs to
    std::string element;  // offending element (fqn / table entry / table name)
    std::string rule_id;
    std::string reason;
};

struct MergeReport {
    std::optional<Rejection> rejection;
    std::vector<std::string> added_classes;  // fully qualified, objects and interactions
    std::vector<std::string> duplicate_classes_ignored;
    std::vector<std::string> scaffolding_resolved;
    // table name -> entry names added (tables: dataTypes, dimensions,
    // transportations, synchronizations, updateRates, notes, switches)
    std::vector<std::pair<std::string, std::vector<std::string>>> added_table_entries;
    std::vector<std::string> warnings;

    bool accepted() const { return !rejection.has_value(); }
    void add_table_entry(const std::string& table, const std::string& entry);
};

// ---------------------------------------------------------------------------
// Invariant checking

struct InvariantViolation {
    std::string rule_id;
    std::string message;
};

// Checks everything the document parser would: name tokens, sibling/table
// uniqueness, reference rules, reserved-name rules, canonical rate text.
// Tree closure and scaffolding emptiness hold by construction in this
// representation, so they need no runtime check here.
std::vector<InvariantViolation> check_module_invariants(const ObjectModule& m);

// ---------------------------------------------------------------------------
// Names and paths

bool is_valid_name_token(std::string_view token);

// Dot-joined fully-qualified names ("HLAobjectRoot.Aircraft.CombatAircraft").
std::string join_path(std::span<const std::string> segments);
std::vector<std::string> split_path(std::string_view path);

// Positive decimal text -> canonical rendering (no superfluous zeros), or
// nullopt if the text is not a positive decimal.
std::optional<std::string> canonical_rate(std::string_view text);

// Collapses whitespace runs to single spaces and trims; used for data type
// definition bodies.
std::string normalize_definition_text(std::string_view text);

// Fully-qualified class names of a module, roots included.
std::vector<std::string> flatten_object_class_names(const ObjectModule& m);
std::vector<std::string> flatten_interaction_class_names(const ObjectModule& m);

const ObjectClassDef* find_object_class(const std::vector<ObjectClassDef>& roots,
                                        std::span<const std::string> path);
const InteractionClassDef* find_interaction_class(const std::vector<InteractionClassDef>& roots,
                                                  std::span<const std::string> path);

// ---------------------------------------------------------------------------
// Enum text

std::string_view to_string(ModelType v);
std::string_view to_string(ReferenceType v);
std::string_view to_string(Sharing v);
std::string_view to_string(OrderType v);
std::string_view to_string(DataTypeCategory v);
std::string_view to_string(Reliability v);
std::string_view to_string(SwitchValue v);

std::optional<ModelType> parse_model_type(std::string_view text);
std::optional<Sharing> parse_sharing(std::string_view text);
std::optional<OrderType> parse_order_type(std::string_view text);
std::optional<DataTypeCategory> parse_data_type_category(std::string_view text);
std::optional<Reliability> parse_reliability(std::string_view text);
std::optional<SwitchValue> parse_switch_value(std::string_view text);

// ---------------------------------------------------------------------------
// Built-in MIM and classification

// The built-in MOM-and-initialization module: object/interaction roots, the
// management classes and interactions, baseline data types, reliable and
// best-effort transportations, and the switches table (all enabled).
// Deterministic: every call returns the same value.
ObjectModule default_mim();

enum class ModuleClass { Standalone, Dependent };

struct ClassificationResult {
    ModuleClass kind = ModuleClass::Standalone;
    std::vector<std::string> warnings;
};

// A module is Dependent iff it contains scaffolding, a name reference that
// resolves neither locally nor in the built-in MIM, or declares a Dependency
// reference. The computed kind governs; a disagreeing declared reference
// only yields a warning.
ClassificationResult classify_module(const ObjectModule& m);

std::string_view to_string(ModuleClass v);

}  // namespace fomforge
