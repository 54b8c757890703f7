#include "fomforge/federation.hpp"

#include <algorithm>
#include <cstdlib>

#include "fomforge/rule_ids.hpp"

namespace fomforge {

namespace {

SimError from_rejection(const Rejection& rejection) {
    std::string message;
    if (!rejection.module.empty()) message += "module '" + rejection.module + "': ";
    if (!rejection.element.empty()) message += rejection.element + ": ";
    message += rejection.reason;
    return SimError{rejection.rule_id, std::move(message)};
}

}  // namespace

Expected<ModuleInput, std::vector<ParseDiagnostic>> ModuleInput::from_text(std::string text) {
    ParseResult parsed = parse_module(text);
    if (!parsed.ok()) return std::move(parsed.diagnostics);
    return ModuleInput{std::move(text), std::move(*parsed.module)};
}

ModuleInput ModuleInput::from_module(const ObjectModule& m) {
    return ModuleInput{serialize_module(m), m};
}

const std::string* FederationExecution::document_for(std::string_view designator) const {
    for (const auto& [name, document] : module_documents) {
        if (name == designator) return &document;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Registry

FederationExecution* FederationRegistry::lookup(const std::string& name) {
    const auto it = federations_.find(name);
    return it == federations_.end() ? nullptr : &it->second;
}

const FederationExecution* FederationRegistry::lookup(const std::string& name) const {
    const auto it = federations_.find(name);
    return it == federations_.end() ? nullptr : &it->second;
}

Expected<CreateResult, SimError> FederationRegistry::create_federation_execution(
    const std::string& name, const std::vector<ModuleInput>& fom_modules,
    const std::optional<ModuleInput>& mim) {
    std::lock_guard lock(mutex_);
    if (name.empty()) {
        return SimError{rules::kSimDuplicateFederation, "federation name must not be empty"};
    }
    if (federations_.contains(name)) {
        return SimError{rules::kSimDuplicateFederation,
                        "a federation execution named '" + name + "' already exists"};
    }
    if (fom_modules.empty()) {
        return SimError{rules::kSimEmptyLoadSet,
                        "creating a federation execution requires at least one module"};
    }

    const ObjectModule mim_model = mim ? mim->module : default_mim();
    auto base = initial_current_fom(mim_model);
    if (!base.ok()) return from_rejection(base.error());

    std::vector<ObjectModule> load_set;
    load_set.reserve(fom_modules.size());
    for (const auto& input : fom_modules) load_set.push_back(input.module);

    MergeOutcome outcome = merge_modules(base.value(), load_set);
    if (!outcome.accepted()) return from_rejection(*outcome.report.rejection);

    FederationExecution fed;
    fed.name = name;
    fed.current_fom = std::move(outcome.fom);
    fed.mim_document = mim ? mim->document : serialize_module(mim_model);
    for (const auto& designator : fed.current_fom.module_designators) {
        for (const auto& input : fom_modules) {
            if (input.module.identification.name == designator) {
                fed.module_documents.emplace_back(designator, input.document);
                break;
            }
        }
    }

    ProtocolEvent event;
    event.kind = "create";
    event.federation = name;
    event.modules = fed.current_fom.module_designators;
    event.generation = fed.current_fom.generation;
    fed.event_log.push_back(std::move(event));

    CreateResult result{name, fed.current_fom.generation, std::move(outcome.report)};
    federations_.emplace(name, std::move(fed));
    return result;
}

Expected<JoinResult, SimError> FederationRegistry::join_federation_execution(
    const std::string& federate_name, const std::string& federation_name,
    const std::vector<ModuleInput>& additional_modules) {
    std::lock_guard lock(mutex_);
    FederationExecution* fed = lookup(federation_name);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation_name + "'"};
    }
    if (federate_name.empty()) {
        return SimError{rules::kSimDuplicateFederate, "federate name must not be empty"};
    }
    if (fed->federates.contains(federate_name)) {
        return SimError{rules::kSimDuplicateFederate, "a federate named '" + federate_name +
                                                          "' has already joined '" +
                                                          federation_name + "'"};
    }

    MergeReport report;
    if (!additional_modules.empty()) {
        std::vector<ObjectModule> load_set;
        load_set.reserve(additional_modules.size());
        for (const auto& input : additional_modules) load_set.push_back(input.module);

        const std::size_t previously_loaded = fed->current_fom.module_designators.size();
        MergeOutcome outcome = merge_modules(fed->current_fom, load_set);
        if (!outcome.accepted()) return from_rejection(*outcome.report.rejection);

        fed->current_fom = std::move(outcome.fom);
        report = std::move(outcome.report);
        for (std::size_t i = previously_loaded; i < fed->current_fom.module_designators.size();
             ++i) {
            const std::string& designator = fed->current_fom.module_designators[i];
            for (const auto& input : additional_modules) {
                if (input.module.identification.name == designator) {
                    fed->module_documents.emplace_back(designator, input.document);
                    break;
                }
            }
        }
    }

    Federate federate;
    federate.name = federate_name;
    federate.handle = fed->next_federate_handle++;
    for (const auto& input : additional_modules) {
        federate.joined_modules.push_back(input.module.identification.name);
    }

    ProtocolEvent event;
    event.kind = "join";
    event.federation = federation_name;
    event.actor = federate_name;
    event.modules = federate.joined_modules;
    event.generation = fed->current_fom.generation;
    fed->event_log.push_back(std::move(event));

    JoinResult result{federate_name, federate.handle, fed->current_fom.generation,
                      std::move(report)};
    fed->federates.emplace(federate_name, std::move(federate));
    return result;
}

Expected<MomSnapshot, SimError> FederationRegistry::mom_snapshot(
    const std::string& federation) const {
    std::lock_guard lock(mutex_);
    const FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    MomSnapshot snapshot;
    snapshot.fom_module_designator_list = fed->current_fom.module_designators;
    snapshot.mim_designator = fed->current_fom.mim_designator;
    snapshot.current_fdd = serialize_module(fed->current_fom.merged_model);
    snapshot.generation = fed->current_fom.generation;
    for (const auto& [name, federate] : fed->federates) {
        snapshot.federate_module_lists.emplace_back(name, federate.joined_modules);
    }
    return snapshot;
}

Expected<MomInteraction, SimError> FederationRegistry::request_module_data(
    const std::string& federation, const MomScope& scope, std::size_t index) const {
    std::lock_guard lock(mutex_);
    const FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    const std::vector<std::string>* designators = nullptr;
    if (scope.kind == MomScope::Kind::Federation) {
        designators = &fed->current_fom.module_designators;
    } else {
        const auto it = fed->federates.find(scope.federate);
        if (it == fed->federates.end()) {
            return SimError{rules::kSimUnknownFederate,
                            "no federate named '" + scope.federate + "' in '" + federation + "'"};
        }
        designators = &it->second.joined_modules;
    }
    if (index >= designators->size()) {
        return SimError{rules::kSimIndexOutOfRange,
                        "module index " + std::to_string(index) + " is out of range (" +
                            std::to_string(designators->size()) + " modules)"};
    }
    const std::string* document = fed->document_for((*designators)[index]);
    if (!document) {
        return SimError{rules::kSimIndexOutOfRange,
                        "no document recorded for designator '" + (*designators)[index] + "'"};
    }
    MomInteraction report;
    report.kind = MomInteractionKind::ReportFomModuleData;
    report.scope = scope;
    report.module_index = index;
    report.payload = *document;
    return report;
}

Expected<MomInteraction, SimError> FederationRegistry::request_mim_data(
    const std::string& federation) const {
    std::lock_guard lock(mutex_);
    const FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    MomInteraction report;
    report.kind = MomInteractionKind::ReportMimData;
    report.payload = fed->mim_document;
    return report;
}

Expected<ClassHandle, SimError> FederationRegistry::resolve_object_class(
    const FederationExecution& fed, const std::string& class_name) const {
    const HandleTable& handles = fed.current_fom.object_class_handles;
    if (class_name.empty()) {
        return SimError{rules::kSimUnknownClass, "class name must not be empty"};
    }
    // Name tokens start with a letter or underscore, so an all-digit token
    // can only be a handle.
    if (std::all_of(class_name.begin(), class_name.end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
        const auto handle = static_cast<std::uint32_t>(std::strtoul(class_name.c_str(), nullptr, 10));
        if (auto fqn = handles.name_of(handle)) return ClassHandle{*fqn, handle};
        return SimError{rules::kSimUnknownClass, "unknown object class handle " + class_name};
    }
    if (class_name.find('.') != std::string::npos) {
        if (auto handle = handles.find(class_name)) return ClassHandle{class_name, *handle};
        const std::string prefixed = std::string(kObjectRootName) + "." + class_name;
        if (auto handle = handles.find(prefixed)) return ClassHandle{prefixed, *handle};
        return SimError{rules::kSimUnknownClass, "unknown object class '" + class_name + "'"};
    }
    // Leaf name: must match exactly one fully-qualified class.
    std::vector<ClassHandle> matches;
    for (const auto& [fqn, handle] : handles.entries()) {
        const std::size_t dot = fqn.rfind('.');
        const std::string_view leaf =
            dot == std::string::npos ? std::string_view(fqn) : std::string_view(fqn).substr(dot + 1);
        if (leaf == class_name) matches.push_back(ClassHandle{fqn, handle});
    }
    if (matches.empty()) {
        return SimError{rules::kSimUnknownClass, "unknown object class '" + class_name + "'"};
    }
    if (matches.size() > 1) {
        return SimError{rules::kSimAmbiguousClass,
                        "class name '" + class_name + "' is ambiguous (" +
                            std::to_string(matches.size()) + " matches); use the full path"};
    }
    return matches.front();
}

Expected<ClassHandle, SimError> FederationRegistry::get_object_class_handle(
    const std::string& federation, const std::string& class_name) const {
    std::lock_guard lock(mutex_);
    const FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    return resolve_object_class(*fed, class_name);
}

std::optional<SimError> FederationRegistry::publish(const std::string& federation,
                                                    const std::string& federate,
                                                    const std::string& class_name) {
    std::lock_guard lock(mutex_);
    FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    const auto it = fed->federates.find(federate);
    if (it == fed->federates.end()) {
        return SimError{rules::kSimUnknownFederate,
                        "no federate named '" + federate + "' in '" + federation + "'"};
    }
    auto resolved = resolve_object_class(*fed, class_name);
    if (!resolved.ok()) return resolved.error();
    it->second.publications.insert(resolved->handle);

    ProtocolEvent event;
    event.kind = "publish";
    event.federation = federation;
    event.actor = federate;
    event.detail = resolved->fqn;
    event.generation = fed->current_fom.generation;
    fed->event_log.push_back(std::move(event));
    return std::nullopt;
}

std::optional<SimError> FederationRegistry::subscribe(const std::string& federation,
                                                      const std::string& federate,
                                                      const std::string& class_name) {
    std::lock_guard lock(mutex_);
    FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    const auto it = fed->federates.find(federate);
    if (it == fed->federates.end()) {
        return SimError{rules::kSimUnknownFederate,
                        "no federate named '" + federate + "' in '" + federation + "'"};
    }
    auto resolved = resolve_object_class(*fed, class_name);
    if (!resolved.ok()) return resolved.error();
    it->second.subscriptions.insert(resolved->handle);

    ProtocolEvent event;
    event.kind = "subscribe";
    event.federation = federation;
    event.actor = federate;
    event.detail = resolved->fqn;
    event.generation = fed->current_fom.generation;
    fed->event_log.push_back(std::move(event));
    return std::nullopt;
}

std::optional<SimError> FederationRegistry::resign_federate(const std::string& federation,
                                                            const std::string& federate) {
    std::lock_guard lock(mutex_);
    FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    const auto it = fed->federates.find(federate);
    if (it == fed->federates.end()) {
        return SimError{rules::kSimUnknownFederate,
                        "no federate named '" + federate + "' in '" + federation + "'"};
    }
    // Module lifecycle spans the whole federation execution; resigning
    // removes the federate only.
    fed->federates.erase(it);

    ProtocolEvent event;
    event.kind = "resign";
    event.federation = federation;
    event.actor = federate;
    event.generation = fed->current_fom.generation;
    fed->event_log.push_back(std::move(event));
    return std::nullopt;
}

std::optional<SimError> FederationRegistry::destroy_federation_execution(
    const std::string& federation) {
    std::lock_guard lock(mutex_);
    FederationExecution* fed = lookup(federation);
    if (!fed) {
        return SimError{rules::kSimUnknownFederation,
                        "no federation execution named '" + federation + "'"};
    }
    if (!fed->federates.empty()) {
        return SimError{rules::kSimFederatesJoined,
                        "cannot destroy '" + federation + "': " +
                            std::to_string(fed->federates.size()) + " federate(s) still joined"};
    }
    federations_.erase(federation);
    return std::nullopt;
}

std::optional<FederationExecution> FederationRegistry::find(const std::string& federation) const {
    std::lock_guard lock(mutex_);
    const FederationExecution* fed = lookup(federation);
    if (!fed) return std::nullopt;
    return *fed;
}

std::vector<std::string> FederationRegistry::federation_names() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> names;
    names.reserve(federations_.size());
    for (const auto& [name, fed] : federations_) names.push_back(name);
    return names;
}

}  // namespace fomforge
