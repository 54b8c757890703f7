#include "support/generators.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace fomforge::testgen {

namespace {

int pick(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

const char* kNamePool[] = {"Alpha",  "Bravo",  "Charlie", "Delta", "Echo",  "Foxtrot",
                           "Golf",   "Hotel",  "India",   "Juliet", "Kilo",  "Lima",
                           "Mike",   "Nectar", "Oscar",   "Papa",   "Quebec", "Romeo",
                           "Sierra", "Tango",  "Uniform", "Victor", "Whisky", "Xray",
                           "Yankee", "Zulu"};

std::string pool_name(std::size_t index) {
    const std::size_t count = std::size(kNamePool);
    std::string name = kNamePool[index % count];
    if (index >= count) name += std::to_string(index / count);
    return name;
}

const char* kSemanticsPool[] = {
    "",
    "tracks the current value",
    "free text with <angle> brackets & an ampersand",
    "quoted \"value\" and 'apostrophes'",
    "spans two\nlines",
};

}  // namespace

// ---------------------------------------------------------------------------
// Builders

AttributeDef attr(std::string name, std::string data_type) {
    AttributeDef a;
    a.name = std::move(name);
    a.data_type = std::move(data_type);
    a.transportation = "HLAreliable";
    a.order = OrderType::Receive;
    return a;
}

ParameterDef param(std::string name, std::string data_type) {
    ParameterDef p;
    p.name = std::move(name);
    p.data_type = std::move(data_type);
    return p;
}

ObjectClassDef regular(std::string name, std::vector<AttributeDef> attributes,
                       std::vector<ObjectClassDef> children) {
    ObjectClassDef cls;
    cls.name = std::move(name);
    cls.props = ObjectClassProps{Sharing::PublishSubscribe, std::move(attributes)};
    cls.children = std::move(children);
    return cls;
}

ObjectClassDef scaffold(std::string name, std::vector<ObjectClassDef> children) {
    ObjectClassDef cls;
    cls.name = std::move(name);
    cls.children = std::move(children);
    return cls;
}

InteractionClassDef regular_interaction(std::string name, std::vector<ParameterDef> parameters,
                                        std::vector<InteractionClassDef> children) {
    InteractionClassDef cls;
    cls.name = std::move(name);
    cls.props =
        InteractionClassProps{Sharing::PublishSubscribe, "HLAreliable", OrderType::Receive,
                              std::move(parameters)};
    cls.children = std::move(children);
    return cls;
}

InteractionClassDef scaffold_interaction(std::string name,
                                         std::vector<InteractionClassDef> children) {
    InteractionClassDef cls;
    cls.name = std::move(name);
    cls.children = std::move(children);
    return cls;
}

ObjectModule make_module(std::string name, std::vector<ObjectClassDef> object_roots,
                         std::vector<InteractionClassDef> interaction_roots) {
    ObjectModule m;
    m.identification.name = std::move(name);
    m.identification.model_type = ModelType::FomModule;
    m.identification.version = "1.0";
    m.object_root_children = std::move(object_roots);
    m.interaction_root_children = std::move(interaction_roots);
    return m;
}

// ---------------------------------------------------------------------------
// Random valid modules

namespace {

std::string random_semantics(std::mt19937& rng) {
    return kSemanticsPool[pick(rng, 0, static_cast<int>(std::size(kSemanticsPool)) - 1)];
}

AttributeDef random_attribute(std::mt19937& rng, std::size_t index,
                              const std::vector<std::string>& local_types,
                              const std::vector<std::string>& local_dims) {
    AttributeDef a;
    a.name = "Field" + std::to_string(index);
    if (!local_types.empty() && chance(rng, 0.3)) {
        a.data_type = local_types[pick(rng, 0, static_cast<int>(local_types.size()) - 1)];
    } else {
        a.data_type = chance(rng, 0.5) ? "HLAunicodeString" : "HLAinteger32BE";
    }
    a.transportation = chance(rng, 0.85) ? "HLAreliable" : "HLAbestEffort";
    a.order = chance(rng, 0.8) ? OrderType::Receive : OrderType::TimeStamp;
    if (!local_dims.empty() && chance(rng, 0.25)) {
        a.dimensions.push_back(local_dims[pick(rng, 0, static_cast<int>(local_dims.size()) - 1)]);
    }
    a.semantics = random_semantics(rng);
    return a;
}

}  // namespace

ObjectModule random_module(std::mt19937& rng) {
    ObjectModule m;
    const int id = pick(rng, 0, 999999);
    const double type_roll = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    m.identification.model_type = type_roll < 0.7    ? ModelType::FomModule
                                  : type_roll < 0.85 ? ModelType::SomModule
                                                     : ModelType::Mim;
    m.identification.name = "Generated" + std::to_string(id);
    m.identification.version = chance(rng, 0.5) ? "1.0" : "2.3";
    if (chance(rng, 0.4)) {
        m.identification.references.push_back(Reference{ReferenceType::Standalone, "", {}});
    } else if (chance(rng, 0.4)) {
        m.identification.references.push_back(
            Reference{ReferenceType::Dependency, "", {"BaseModule"}});
    }
    if (chance(rng, 0.2)) {
        m.identification.references.push_back(
            Reference{ReferenceType::Other, "SeeAlso", {"HandbookChapter3"}});
    }

    // Local tables first so classes can reference them.
    std::vector<std::string> local_types;
    for (int i = 0, n = pick(rng, 0, 3); i < n; ++i) {
        DataTypeDef dt;
        dt.name = "LocalType" + std::to_string(i);
        dt.category = static_cast<DataTypeCategory>(pick(rng, 0, 5));
        dt.definition = chance(rng, 0.5) ? "HLAinteger32BE scaled by 10" : "octet pair";
        local_types.push_back(dt.name);
        m.data_types.push_back(std::move(dt));
    }
    std::vector<std::string> local_dims;
    for (int i = 0, n = pick(rng, 0, 2); i < n; ++i) {
        Dimension d;
        d.name = "Dim" + std::to_string(i);
        d.upper_bound = static_cast<std::uint64_t>(pick(rng, 1, 100000));
        local_dims.push_back(d.name);
        m.dimensions.push_back(std::move(d));
    }
    if (chance(rng, 0.3)) {
        m.transportations.push_back(Transportation{"LowLatency", Reliability::BestEffort});
    }
    if (chance(rng, 0.3)) {
        m.synchronization_points.push_back(
            SynchronizationPoint{"ReadyToRun", "HLAunicodeString", random_semantics(rng)});
    }
    if (chance(rng, 0.3)) {
        static const char* kRates[] = {"50", "0.5", "12.25", "1", "600", "0.125"};
        m.update_rates.push_back(UpdateRate{"RateA", kRates[pick(rng, 0, 5)]});
    }
    if (chance(rng, 0.3)) {
        Switches s;
        s.auto_provide = chance(rng, 0.5) ? SwitchValue::Enabled : SwitchValue::Disabled;
        s.service_reporting = chance(rng, 0.5) ? SwitchValue::Enabled : SwitchValue::Disabled;
        m.switches = s;
    }
    for (int i = 0, n = pick(rng, 0, 2); i < n; ++i) {
        m.notes.push_back(NoteEntry{"Note" + std::to_string(i),
                                    chance(rng, 0.5) ? "plain body" : "body with\nnewline & <mark>"});
    }

    if (m.identification.model_type == ModelType::Mim) {
        for (int i = 0, n = pick(rng, 0, 2); i < n; ++i) {
            m.object_root_attributes.push_back(
                random_attribute(rng, static_cast<std::size_t>(i), local_types, local_dims));
        }
    }

    // Object classes: a forest with unique names and random scaffolding.
    std::size_t name_index = static_cast<std::size_t>(pick(rng, 0, 25));
    std::vector<ObjectClassDef*> all_nodes;
    const int class_count = pick(rng, 0, 8);
    for (int i = 0; i < class_count; ++i) {
        ObjectClassDef cls;
        cls.name = pool_name(name_index);
        name_index += static_cast<std::size_t>(pick(rng, 1, 3));
        if (chance(rng, 0.75)) {
            ObjectClassProps props;
            props.sharing = static_cast<Sharing>(pick(rng, 0, 3));
            for (int a = 0, n = pick(rng, 0, 3); a < n; ++a) {
                props.attributes.push_back(
                    random_attribute(rng, static_cast<std::size_t>(a), local_types, local_dims));
            }
            cls.props = std::move(props);
        }
        if (all_nodes.empty() || chance(rng, 0.45)) {
            m.object_root_children.push_back(std::move(cls));
            all_nodes.push_back(&m.object_root_children.back());
        } else {
            ObjectClassDef* parent = all_nodes[static_cast<std::size_t>(
                pick(rng, 0, static_cast<int>(all_nodes.size()) - 1))];
            parent->children.push_back(std::move(cls));
            all_nodes.push_back(&parent->children.back());
        }
        // Re-collect pointers: vector reallocation may have moved nodes.
        all_nodes.clear();
        for (auto& root : m.object_root_children) {
            std::vector<ObjectClassDef*> stack{&root};
            while (!stack.empty()) {
                ObjectClassDef* node = stack.back();
                stack.pop_back();
                all_nodes.push_back(node);
                for (auto& child : node->children) stack.push_back(&child);
            }
        }
    }

    // Interactions: flat or one level deep.
    const int interaction_count = pick(rng, 0, 4);
    for (int i = 0; i < interaction_count; ++i) {
        InteractionClassDef cls;
        cls.name = pool_name(name_index);
        name_index += static_cast<std::size_t>(pick(rng, 1, 3));
        if (chance(rng, 0.8)) {
            InteractionClassProps props;
            props.sharing = static_cast<Sharing>(pick(rng, 0, 3));
            props.transportation = chance(rng, 0.9) ? "HLAreliable" : "HLAbestEffort";
            props.order = chance(rng, 0.8) ? OrderType::Receive : OrderType::TimeStamp;
            for (int p = 0, n = pick(rng, 0, 2); p < n; ++p) {
                ParameterDef pd;
                pd.name = "Param" + std::to_string(p);
                pd.data_type = chance(rng, 0.5) ? "HLAunicodeString" : "HLAinteger32BE";
                pd.semantics = random_semantics(rng);
                props.parameters.push_back(std::move(pd));
            }
            cls.props = std::move(props);
        }
        if (m.interaction_root_children.empty() || chance(rng, 0.6)) {
            m.interaction_root_children.push_back(std::move(cls));
        } else {
            m.interaction_root_children.front().children.push_back(std::move(cls));
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Universe slicing

namespace {

struct ObjectSpec {
    std::vector<std::string> path;  // relative to the object root
    ObjectClassProps props;
};

struct InteractionSpec {
    std::vector<std::string> path;
    InteractionClassProps props;
};

struct Universe {
    std::vector<ObjectSpec> objects;            // parents precede children
    std::vector<InteractionSpec> interactions;  // parents precede children
    std::vector<DataTypeDef> data_types;        // custom, beyond the baseline
    std::vector<Transportation> transportations;
    std::vector<Dimension> dimensions;
    std::vector<SynchronizationPoint> syncs;
    std::vector<UpdateRate> rates;
    std::vector<NoteEntry> notes;

    int object_index_of(const std::vector<std::string>& path) const {
        for (std::size_t i = 0; i < objects.size(); ++i) {
            if (objects[i].path == path) return static_cast<int>(i);
        }
        return -1;
    }
    int interaction_index_of(const std::vector<std::string>& path) const {
        for (std::size_t i = 0; i < interactions.size(); ++i) {
            if (interactions[i].path == path) return static_cast<int>(i);
        }
        return -1;
    }
};

Universe random_universe(std::mt19937& rng, int max_objects, int max_interactions) {
    Universe u;
    for (int i = 0, n = pick(rng, 0, 2); i < n; ++i) {
        u.data_types.push_back(DataTypeDef{"SharedType" + std::to_string(i),
                                           DataTypeCategory::Simple,
                                           "HLAinteger32BE unit " + std::to_string(i)});
    }
    if (chance(rng, 0.4)) {
        u.transportations.push_back(Transportation{"SharedBurst", Reliability::BestEffort});
    }
    for (int i = 0, n = pick(rng, 0, 2); i < n; ++i) {
        u.dimensions.push_back(
            Dimension{"SharedDim" + std::to_string(i), static_cast<std::uint64_t>(pick(rng, 1, 500))});
    }
    if (chance(rng, 0.4)) {
        u.syncs.push_back(SynchronizationPoint{"Checkpoint", "HLAunicodeString", "sync point"});
    }
    if (chance(rng, 0.4)) u.rates.push_back(UpdateRate{"SharedRate", "25.5"});
    if (chance(rng, 0.4)) u.notes.push_back(NoteEntry{"SharedNote", "shared body"});

    auto random_props = [&](std::size_t attr_seed) {
        ObjectClassProps props;
        props.sharing = static_cast<Sharing>(pick(rng, 0, 3));
        const int attrs = pick(rng, 1, 3);
        for (int a = 0; a < attrs; ++a) {
            AttributeDef ad;
            ad.name = "Field" + std::to_string(attr_seed) + std::to_string(a);
            if (!u.data_types.empty() && chance(rng, 0.3)) {
                ad.data_type = u.data_types[static_cast<std::size_t>(pick(
                                                rng, 0, static_cast<int>(u.data_types.size()) - 1))]
                                   .name;
            } else {
                ad.data_type = chance(rng, 0.5) ? "HLAunicodeString" : "HLAinteger32BE";
            }
            ad.transportation = (!u.transportations.empty() && chance(rng, 0.2))
                                    ? u.transportations.front().name
                                    : "HLAreliable";
            ad.order = chance(rng, 0.8) ? OrderType::Receive : OrderType::TimeStamp;
            if (!u.dimensions.empty() && chance(rng, 0.2)) {
                ad.dimensions.push_back(
                    u.dimensions[static_cast<std::size_t>(
                                     pick(rng, 0, static_cast<int>(u.dimensions.size()) - 1))]
                        .name);
            }
            props.attributes.push_back(std::move(ad));
        }
        return props;
    };

    const int object_count = pick(rng, 2, max_objects);
    for (int i = 0; i < object_count; ++i) {
        ObjectSpec spec;
        const std::string name = pool_name(static_cast<std::size_t>(i));
        if (u.objects.empty() || chance(rng, 0.4)) {
            spec.path = {name};
        } else {
            const auto& parent =
                u.objects[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(u.objects.size()) - 1))];
            spec.path = parent.path;
            spec.path.push_back(name);
        }
        spec.props = random_props(static_cast<std::size_t>(i));
        u.objects.push_back(std::move(spec));
    }

    const int interaction_count = pick(rng, 1, max_interactions);
    for (int i = 0; i < interaction_count; ++i) {
        InteractionSpec spec;
        const std::string name = "I" + pool_name(static_cast<std::size_t>(i));
        if (u.interactions.empty() || chance(rng, 0.5)) {
            spec.path = {name};
        } else {
            const auto& parent = u.interactions[static_cast<std::size_t>(
                pick(rng, 0, static_cast<int>(u.interactions.size()) - 1))];
            spec.path = parent.path;
            spec.path.push_back(name);
        }
        InteractionClassProps props;
        props.sharing = static_cast<Sharing>(pick(rng, 0, 3));
        props.transportation = "HLAreliable";
        props.order = chance(rng, 0.8) ? OrderType::Receive : OrderType::TimeStamp;
        for (int p = 0, n = pick(rng, 0, 2); p < n; ++p) {
            ParameterDef pd;
            pd.name = "Param" + std::to_string(i) + std::to_string(p);
            pd.data_type = chance(rng, 0.5) ? "HLAunicodeString" : "HLAinteger32BE";
            props.parameters.push_back(std::move(pd));
        }
        spec.props = std::move(props);
        u.interactions.push_back(std::move(spec));
    }
    return u;
}

// Adds every ancestor index of `index` (and itself) to `closure`.
template <typename Spec>
void add_with_ancestors(const std::vector<Spec>& specs, int index, std::set<int>& closure) {
    std::vector<std::string> path = specs[static_cast<std::size_t>(index)].path;
    while (!path.empty()) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            if (specs[i].path == path) {
                closure.insert(static_cast<int>(i));
                break;
            }
        }
        path.pop_back();
    }
}

// Inserts a class built from a spec into a module tree, creating no
// intermediate nodes (ancestors are expected to be present already).
template <typename Class, typename Spec>
void insert_spec(std::vector<Class>& roots, const Spec& spec, bool scaffolding) {
    std::vector<Class>* level = &roots;
    for (std::size_t depth = 0; depth + 1 < spec.path.size(); ++depth) {
        Class* found = nullptr;
        for (auto& node : *level) {
            if (node.name == spec.path[depth]) {
                found = &node;
                break;
            }
        }
        assert(found != nullptr);
        level = &found->children;
    }
    Class cls;
    cls.name = spec.path.back();
    if (!scaffolding) cls.props = spec.props;
    level->push_back(std::move(cls));
}

struct SetPlan {
    Universe universe;
    // Per module: selected spec indexes and whether each is scaffolding.
    std::vector<std::map<int, bool>> object_selection;       // index -> scaffolding?
    std::vector<std::map<int, bool>> interaction_selection;
};

SetPlan plan_compatible_set(std::mt19937& rng, int module_count, int max_classes) {
    SetPlan plan;
    plan.universe = random_universe(rng, std::min(max_classes, 18), 6);
    const Universe& u = plan.universe;
    plan.object_selection.resize(static_cast<std::size_t>(module_count));
    plan.interaction_selection.resize(static_cast<std::size_t>(module_count));

    std::vector<std::set<int>> object_closures(static_cast<std::size_t>(module_count));
    std::vector<std::set<int>> interaction_closures(static_cast<std::size_t>(module_count));

    for (int mod = 0; mod < module_count; ++mod) {
        auto& objects = object_closures[static_cast<std::size_t>(mod)];
        const int anchors = pick(rng, 1, std::max(1, static_cast<int>(u.objects.size()) / 2));
        for (int a = 0; a < anchors; ++a) {
            const int index = mod == 0 && a == 0
                                  ? 0
                                  : pick(rng, 0, static_cast<int>(u.objects.size()) - 1);
            add_with_ancestors(u.objects, index, objects);
        }
        auto& interactions = interaction_closures[static_cast<std::size_t>(mod)];
        if (mod == 0 || chance(rng, 0.7)) {
            const int index =
                mod == 0 ? 0 : pick(rng, 0, static_cast<int>(u.interactions.size()) - 1);
            add_with_ancestors(u.interactions, index, interactions);
        }
    }

    // Ownership: every selected class is regular in at least one module.
    // Module 0 always owns spec 0 so poisoning has a known regular target.
    auto assign = [&](const std::vector<std::set<int>>& closures,
                      std::vector<std::map<int, bool>>& selection) {
        std::map<int, std::vector<int>> holders;
        for (int mod = 0; mod < module_count; ++mod) {
            for (int index : closures[static_cast<std::size_t>(mod)]) {
                holders[index].push_back(mod);
            }
        }
        for (const auto& [index, mods] : holders) {
            int owner = mods[static_cast<std::size_t>(
                pick(rng, 0, static_cast<int>(mods.size()) - 1))];
            if (index == 0 && std::find(mods.begin(), mods.end(), 0) != mods.end()) owner = 0;
            for (int mod : mods) {
                const bool scaffolding = mod != owner && chance(rng, 0.6);
                selection[static_cast<std::size_t>(mod)][index] = scaffolding;
            }
        }
    };
    assign(object_closures, plan.object_selection);
    assign(interaction_closures, plan.interaction_selection);
    return plan;
}

ObjectModule module_from_plan(const SetPlan& plan, int mod, const std::string& name) {
    const Universe& u = plan.universe;
    ObjectModule m;
    m.identification.name = name;
    m.identification.model_type = ModelType::FomModule;
    m.identification.version = "1.0";

    std::set<std::string> needed_types;
    std::set<std::string> needed_transports;
    std::set<std::string> needed_dims;

    auto note_attr_needs = [&](const AttributeDef& a) {
        needed_types.insert(a.data_type);
        needed_transports.insert(a.transportation);
        for (const auto& d : a.dimensions) needed_dims.insert(d);
    };

    for (const auto& [index, scaffolding] : plan.object_selection[static_cast<std::size_t>(mod)]) {
        const ObjectSpec& spec = u.objects[static_cast<std::size_t>(index)];
        insert_spec(m.object_root_children, spec, scaffolding);
        if (!scaffolding) {
            for (const auto& a : spec.props.attributes) note_attr_needs(a);
        }
    }
    for (const auto& [index, scaffolding] :
         plan.interaction_selection[static_cast<std::size_t>(mod)]) {
        const InteractionSpec& spec = u.interactions[static_cast<std::size_t>(index)];
        insert_spec(m.interaction_root_children, spec, scaffolding);
        if (!scaffolding) {
            needed_transports.insert(spec.props.transportation);
            for (const auto& p : spec.props.parameters) needed_types.insert(p.data_type);
        }
    }

    for (const auto& dt : u.data_types) {
        if (needed_types.contains(dt.name)) m.data_types.push_back(dt);
    }
    for (const auto& t : u.transportations) {
        if (needed_transports.contains(t.name)) m.transportations.push_back(t);
    }
    for (const auto& d : u.dimensions) {
        if (needed_dims.contains(d.name)) m.dimensions.push_back(d);
    }
    return m;
}

}  // namespace

std::vector<ObjectModule> compatible_set(std::mt19937& rng, int module_count, int max_classes) {
    const SetPlan plan = plan_compatible_set(rng, module_count, max_classes);
    std::vector<ObjectModule> modules;
    modules.reserve(static_cast<std::size_t>(module_count));
    for (int mod = 0; mod < module_count; ++mod) {
        std::string name = "SetModule";
        name.push_back(static_cast<char>('A' + mod));
        ObjectModule m = module_from_plan(plan, mod, name);
        // Shared extras every module may restate identically.
        if (chance(rng, 0.5)) {
            m.synchronization_points = plan.universe.syncs;
            m.update_rates = plan.universe.rates;
            m.notes = plan.universe.notes;
        }
        modules.push_back(std::move(m));
    }
    return modules;
}

std::vector<ObjectModule> poisoned_set(std::mt19937& rng, Poison kind) {
    std::vector<ObjectModule> modules = compatible_set(rng, pick(rng, 2, 3), 16);

    ObjectModule poison;
    poison.identification.name = "PoisonModule";
    poison.identification.model_type = ModelType::FomModule;
    poison.identification.version = "1.0";

    // The first module owns at least one regular object class and one
    // regular interaction (guaranteed by the plan); copy and damage it.
    auto first_regular_object = [](const ObjectModule& m) -> const ObjectClassDef* {
        const ObjectClassDef* found = nullptr;
        std::vector<const ObjectClassDef*> stack;
        for (const auto& c : m.object_root_children) stack.push_back(&c);
        while (!stack.empty() && !found) {
            const ObjectClassDef* node = stack.back();
            stack.pop_back();
            if (!node->is_scaffolding()) found = node;
            for (const auto& child : node->children) stack.push_back(&child);
        }
        return found;
    };
    auto first_regular_interaction = [](const ObjectModule& m) -> const InteractionClassDef* {
        const InteractionClassDef* found = nullptr;
        std::vector<const InteractionClassDef*> stack;
        for (const auto& c : m.interaction_root_children) stack.push_back(&c);
        while (!stack.empty() && !found) {
            const InteractionClassDef* node = stack.back();
            stack.pop_back();
            if (!node->is_scaffolding()) found = node;
            for (const auto& child : node->children) stack.push_back(&child);
        }
        return found;
    };

    // Rebuild a one-class module that re-declares `target` at root level of
    // its original position; ancestors come along as scaffolding.
    auto redeclare_object = [&](const ObjectClassDef& target,
                                std::vector<std::string> path_to_target,
                                ObjectClassProps new_props) {
        ObjectClassDef leaf;
        leaf.name = target.name;
        leaf.props = std::move(new_props);
        ObjectClassDef current = std::move(leaf);
        for (std::size_t i = path_to_target.size(); i-- > 1;) {
            ObjectClassDef parent;
            parent.name = path_to_target[i - 1];
            parent.children.push_back(std::move(current));
            current = std::move(parent);
        }
        poison.object_root_children.push_back(std::move(current));
    };

    // Locate the path of a node inside a module tree.
    auto path_of_object = [&](const ObjectModule& m, const ObjectClassDef* target) {
        std::vector<std::string> path;
        std::vector<std::pair<const ObjectClassDef*, std::vector<std::string>>> stack;
        for (const auto& c : m.object_root_children) stack.push_back({&c, {c.name}});
        while (!stack.empty()) {
            auto [node, p] = stack.back();
            stack.pop_back();
            if (node == target) return p;
            for (const auto& child : node->children) {
                auto next = p;
                next.push_back(child.name);
                stack.push_back({&child, std::move(next)});
            }
        }
        return path;
    };

    switch (kind) {
        case Poison::AttributeExtension: {
            const ObjectClassDef* target = first_regular_object(modules.front());
            assert(target);
            ObjectClassProps extended = *target->props;
            extended.attributes.push_back(attr("ZZextra"));
            redeclare_object(*target, path_of_object(modules.front(), target),
                             std::move(extended));
            poison.data_types = modules.front().data_types;
            poison.transportations = modules.front().transportations;
            poison.dimensions = modules.front().dimensions;
            break;
        }
        case Poison::ConflictingDuplicate: {
            const ObjectClassDef* target = first_regular_object(modules.front());
            assert(target && !target->props->attributes.empty());
            ObjectClassProps twisted = *target->props;
            AttributeDef& first = twisted.attributes.front();
            first.data_type =
                first.data_type == "HLAinteger32BE" ? "HLAunicodeString" : "HLAinteger32BE";
            redeclare_object(*target, path_of_object(modules.front(), target), std::move(twisted));
            poison.data_types = modules.front().data_types;
            poison.transportations = modules.front().transportations;
            poison.dimensions = modules.front().dimensions;
            break;
        }
        case Poison::ParameterExtension: {
            const InteractionClassDef* target = first_regular_interaction(modules.front());
            assert(target);
            // Interactions generated by the plan sit along a single path;
            // re-declare the full chain with scaffolding ancestors.
            std::vector<std::string> path;
            {
                std::vector<std::pair<const InteractionClassDef*, std::vector<std::string>>> stack;
                for (const auto& c : modules.front().interaction_root_children) {
                    stack.push_back({&c, {c.name}});
                }
                while (!stack.empty()) {
                    auto [node, p] = stack.back();
                    stack.pop_back();
                    if (node == target) {
                        path = p;
                        break;
                    }
                    for (const auto& child : node->children) {
                        auto next = p;
                        next.push_back(child.name);
                        stack.push_back({&child, std::move(next)});
                    }
                }
            }
            InteractionClassProps extended = *target->props;
            extended.parameters.push_back(param("ZZextra"));
            InteractionClassDef current;
            current.name = path.back();
            current.props = std::move(extended);
            for (std::size_t i = path.size(); i-- > 1;) {
                InteractionClassDef parent;
                parent.name = path[i - 1];
                parent.children.push_back(std::move(current));
                current = std::move(parent);
            }
            poison.interaction_root_children.push_back(std::move(current));
            poison.data_types = modules.front().data_types;
            poison.transportations = modules.front().transportations;
            break;
        }
        case Poison::UnresolvedScaffolding: {
            poison.object_root_children.push_back(scaffold("ZZghost"));
            break;
        }
        case Poison::SwitchesMismatch: {
            Switches s;  // the built-in baseline has everything enabled
            s.auto_provide = SwitchValue::Disabled;
            poison.switches = s;
            break;
        }
    }

    modules.push_back(std::move(poison));
    return modules;
}

std::set<std::string> flattened_name_set(const ObjectModule& m) {
    std::set<std::string> names;
    for (auto& n : flatten_object_class_names(m)) names.insert(std::move(n));
    for (auto& n : flatten_interaction_class_names(m)) names.insert(std::move(n));
    return names;
}

}  // namespace fomforge::testgen
