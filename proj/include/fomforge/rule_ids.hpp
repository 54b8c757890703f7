#pragma once

// Stable diagnostic / rejection rule identifiers. These are part of the
// tool's observable contract: the scenario runner's `expect error <ruleId>`
// assertion and the CLI diagnostics both print them verbatim.

namespace fomforge::rules {

// Document parsing and module validation.
inline constexpr const char* kXmlMalformed = "XML-001";
inline constexpr const char* kUnknownElement = "ELEM-001";
inline constexpr const char* kIdentification = "IDENT-001";
inline constexpr const char* kBadValue = "VALUE-001";
inline constexpr const char* kBadToken = "TOKEN-001";
inline constexpr const char* kDuplicateName = "DUP-001";
inline constexpr const char* kClosure = "CLOSURE-001";
inline constexpr const char* kScaffolding = "SCAFF-001";
inline constexpr const char* kReference = "REF-001";
inline constexpr const char* kSwitches = "SWITCH-001";
inline constexpr const char* kReservedRoot = "ROOT-001";
inline constexpr const char* kClassifyMismatch = "CLASSIFY-001";

// Merge rejections.
inline constexpr const char* kMergeClassConflict = "MERGE-001";
inline constexpr const char* kMergeAttributeExtension = "MERGE-002";
inline constexpr const char* kMergeParameterExtension = "MERGE-003";
inline constexpr const char* kMergeTableConflict = "MERGE-004";
inline constexpr const char* kMergeSwitchesMismatch = "MERGE-005";
inline constexpr const char* kMergeUnresolvedScaffolding = "MERGE-006";
inline constexpr const char* kMergeDanglingReference = "MERGE-007";
inline constexpr const char* kMergeMimNotLoadable = "MERGE-008";
inline constexpr const char* kMergeDesignatorClash = "MERGE-009";
inline constexpr const char* kMergeAncestryMismatch = "MERGE-010";
inline constexpr const char* kMergeInvalidModule = "MERGE-011";

// Federation runtime.
inline constexpr const char* kSimUnknownFederation = "SIM-001";
inline constexpr const char* kSimDuplicateFederation = "SIM-002";
inline constexpr const char* kSimUnknownFederate = "SIM-003";
inline constexpr const char* kSimDuplicateFederate = "SIM-004";
inline constexpr const char* kSimIndexOutOfRange = "SIM-005";
inline constexpr const char* kSimUnknownClass = "SIM-006";
inline constexpr const char* kSimAmbiguousClass = "SIM-007";
inline constexpr const char* kSimFederatesJoined = "SIM-008";
inline constexpr const char* kSimBadScope = "SIM-009";
inline constexpr const char* kSimEmptyLoadSet = "SIM-010";

// Scenario and file handling.
inline constexpr const char* kFileUnreadable = "FILE-001";
inline constexpr const char* kScriptSyntax = "SCRIPT-001";

}  // namespace fomforge::rules
