#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fomforge/model.hpp"

// Document format for modules: parsing with position-carrying diagnostics
// and canonical serialization. The canonical serialization of a current
// FOM's merged model is its FOM document data.

namespace fomforge {

enum class Severity { Error, Warning };

struct ParseDiagnostic {
    Severity severity = Severity::Error;
    int line = 0;    // 1-based; 0 when no position applies
    int column = 0;  // 1-based byte column
    std::string message;
    std::string rule_id;
};

std::string format_diagnostic(const ParseDiagnostic& d);

struct ParseResult {
    // Present iff no Error diagnostic was produced.
    std::optional<ObjectModule> module;
    // Errors and warnings in document order; warnings may accompany success.
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return module.has_value(); }
    const ParseDiagnostic* first_error() const;
};

// Parses a UTF-8 module document. A returned module satisfies every model
// invariant, superclass closure included.
ParseResult parse_module(std::string_view document);

// Canonical form: fixed section order, siblings in first-declared order,
// two-space indentation, LF line endings. Equal models serialize to
// byte-identical documents.
std::string serialize_module(const ObjectModule& m);

}  // namespace fomforge
