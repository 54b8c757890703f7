#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "fomforge/expected.hpp"
#include "fomforge/io.hpp"
#include "fomforge/merge.hpp"
#include "fomforge/model.hpp"

// In-process federation-execution runtime: create/join with module lists,
// atomic loads, management-object-model reflection and queries, and a
// declaration (publish/subscribe) registry.

namespace fomforge {

struct SimError {
    std::string rule_id;
    std::string message;
};

// A module plus the exact document it came from. Reports return these
// original bytes, not a re-serialization.
struct ModuleInput {
    std::string document;
    ObjectModule module;

    static Expected<ModuleInput, std::vector<ParseDiagnostic>> from_text(std::string text);
    static ModuleInput from_module(const ObjectModule& m);
};

struct Federate {
    std::string name;
    std::uint32_t handle = 0;
    std::vector<std::string> joined_modules;  // designators supplied at join
    std::set<std::uint32_t> publications;     // object class handles
    std::set<std::uint32_t> subscriptions;
};

struct ProtocolEvent {
    std::string kind;  // create | load | join | resign | destroy | publish | subscribe
    std::string federation;
    std::string actor;                 // federate name when applicable
    std::vector<std::string> modules;  // designators involved
    bool ok = true;
    std::string detail;
    std::uint64_t generation = 0;  // current FOM generation after the event
};

struct FederationExecution {
    std::string name;
    CurrentFom current_fom;
    std::map<std::string, Federate> federates;
    std::vector<ProtocolEvent> event_log;
    // Original documents: the MIM and one entry per designator, in load order.
    std::string mim_document;
    std::vector<std::pair<std::string, std::string>> module_documents;
    std::uint32_t next_federate_handle = 1;

    const std::string* document_for(std::string_view designator) const;
};

struct MomSnapshot {
    std::vector<std::string> fom_module_designator_list;
    std::string mim_designator;
    std::string current_fdd;  // canonical serialization of the merged model
    std::uint64_t generation = 0;
    std::vector<std::pair<std::string, std::vector<std::string>>> federate_module_lists;
};

enum class MomInteractionKind {
    RequestFomModuleData,
    ReportFomModuleData,
    RequestMimData,
    ReportMimData,
};

struct MomScope {
    enum class Kind { Federation, Federate };
    Kind kind = Kind::Federation;
    std::string federate;  // set for Kind::Federate

    static MomScope federation() { return {}; }
    static MomScope for_federate(std::string name) {
        return MomScope{Kind::Federate, std::move(name)};
    }
};

struct MomInteraction {
    MomInteractionKind kind = MomInteractionKind::ReportFomModuleData;
    MomScope scope;
    std::size_t module_index = 0;  // requests
    std::string payload;           // reports: the module document text
};

struct CreateResult {
    std::string federation;
    std::uint64_t generation = 0;
    MergeReport report;
};

struct JoinResult {
    std::string federate;
    std::uint32_t handle = 0;
    std::uint64_t generation = 0;
    MergeReport report;
};

struct ClassHandle {
    std::string fqn;
    std::uint32_t handle = 0;
};

// Registry of live federation executions. Operations on one execution are
// linearized behind a mutex; every returned value is an immutable snapshot.
class FederationRegistry {
public:
    Expected<CreateResult, SimError> create_federation_execution(
        const std::string& name, const std::vector<ModuleInput>& fom_modules,
        const std::optional<ModuleInput>& mim = std::nullopt);

    Expected<JoinResult, SimError> join_federation_execution(
        const std::string& federate_name, const std::string& federation_name,
        const std::vector<ModuleInput>& additional_modules = {});

    Expected<MomSnapshot, SimError> mom_snapshot(const std::string& federation) const;

    // Report payload is the byte-exact original document of the module at
    // `index` in the scoped designator list.
    Expected<MomInteraction, SimError> request_module_data(const std::string& federation,
                                                           const MomScope& scope,
                                                           std::size_t index) const;
    Expected<MomInteraction, SimError> request_mim_data(const std::string& federation) const;

    // Resolves a fully-qualified name or a unique leaf name.
    Expected<ClassHandle, SimError> get_object_class_handle(const std::string& federation,
                                                            const std::string& class_name) const;

    std::optional<SimError> publish(const std::string& federation, const std::string& federate,
                                    const std::string& class_name);
    std::optional<SimError> subscribe(const std::string& federation, const std::string& federate,
                                      const std::string& class_name);

    std::optional<SimError> resign_federate(const std::string& federation,
                                            const std::string& federate);
    std::optional<SimError> destroy_federation_execution(const std::string& federation);

    // Test and trace introspection; copies the execution snapshot.
    std::optional<FederationExecution> find(const std::string& federation) const;
    std::vector<std::string> federation_names() const;

private:
    FederationExecution* lookup(const std::string& name);
    const FederationExecution* lookup(const std::string& name) const;
    Expected<ClassHandle, SimError> resolve_object_class(const FederationExecution& fed,
                                                         const std::string& class_name) const;

    mutable std::mutex mutex_;
    std::map<std::string, FederationExecution> federations_;
};

}  // namespace fomforge
