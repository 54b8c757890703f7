#include <string>

#include "fomforge/io.hpp"
#include "xml_reader.hpp"

namespace fomforge {

namespace {

using xml::escape_attribute;
using xml::escape_text;

// Composed models and the MIM spell the roots out; plain modules keep them
// implicit and write paths relative to the root.
bool explicit_root_style(ModelType type) {
    return type == ModelType::Mim || type == ModelType::Fom || type == ModelType::Som;
}

class Writer {
public:
    explicit Writer(const ObjectModule& m) : m_(m), explicit_roots_(explicit_root_style(m.identification.model_type)) {}

    std::string run() {
        out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        line(0, "<objectModel name=\"" + escape_attribute(m_.identification.name) +
                    "\" modelType=\"" + std::string(to_string(m_.identification.model_type)) +
                    "\" version=\"" + escape_attribute(m_.identification.version) + "\">");
        write_references();
        write_objects();
        write_interactions();
        write_data_types();
        write_dimensions();
        write_transportations();
        write_synchronizations();
        write_update_rates();
        write_switches();
        write_notes();
        line(0, "</objectModel>");
        return std::move(out_);
    }

private:
    void line(int depth, std::string_view text) {
        out_.append(static_cast<std::size_t>(depth) * 2, ' ');
        out_.append(text);
        out_.push_back('\n');
    }

    void write_references() {
        const auto& refs = m_.identification.references;
        if (refs.empty()) return;
        line(1, "<references>");
        for (const auto& ref : refs) {
            const std::string type = ref.type == ReferenceType::Other
                                         ? ref.other_label
                                         : std::string(to_string(ref.type));
            std::string idents;
            if (ref.identifications.empty()) {
                idents = "NA";
            } else {
                for (const auto& ident : ref.identifications) {
                    if (!idents.empty()) idents.push_back(',');
                    idents += ident;
                }
            }
            line(2, "<reference type=\"" + escape_attribute(type) + "\" idents=\"" +
                        escape_attribute(idents) + "\"/>");
        }
        line(1, "</references>");
    }

    std::string attribute_markup(const AttributeDef& a) const {
        std::string s = "<attribute name=\"" + escape_attribute(a.name) + "\" dataType=\"" +
                        escape_attribute(a.data_type) + "\" transportation=\"" +
                        escape_attribute(a.transportation) + "\" order=\"" +
                        std::string(to_string(a.order)) + "\"";
        if (!a.dimensions.empty()) {
            std::string dims;
            for (const auto& d : a.dimensions) {
                if (!dims.empty()) dims.push_back(',');
                dims += d;
            }
            s += " dimensions=\"" + escape_attribute(dims) + "\"";
        }
        if (!a.semantics.empty()) s += " semantics=\"" + escape_attribute(a.semantics) + "\"";
        s += "/>";
        return s;
    }

    void write_object_class(const ObjectClassDef& cls, const std::string& prefix) {
        const std::string path = prefix.empty() ? cls.name : prefix + "." + cls.name;
        line(2, "<objectClass>");
        line(3, "<name>" + escape_text(path) + "</name>");
        if (!cls.is_scaffolding()) {
            line(3, "<sharing>" + std::string(to_string(cls.props->sharing)) + "</sharing>");
            for (const auto& attr : cls.props->attributes) line(3, attribute_markup(attr));
        }
        line(2, "</objectClass>");
        for (const auto& child : cls.children) write_object_class(child, path);
    }

    void write_objects() {
        const bool any = explicit_roots_ || !m_.object_root_children.empty();
        if (!any) return;
        line(1, "<objects>");
        std::string prefix;
        if (explicit_roots_) {
            prefix = std::string(kObjectRootName);
            line(2, "<objectClass>");
            line(3, "<name>" + prefix + "</name>");
            for (const auto& attr : m_.object_root_attributes) line(3, attribute_markup(attr));
            line(2, "</objectClass>");
        }
        for (const auto& cls : m_.object_root_children) write_object_class(cls, prefix);
        line(1, "</objects>");
    }

    void write_interaction_class(const InteractionClassDef& cls, const std::string& prefix) {
        const std::string path = prefix.empty() ? cls.name : prefix + "." + cls.name;
        line(2, "<interactionClass>");
        line(3, "<name>" + escape_text(path) + "</name>");
        if (!cls.is_scaffolding()) {
            line(3, "<sharing>" + std::string(to_string(cls.props->sharing)) + "</sharing>");
            line(3, "<transportation>" + escape_text(cls.props->transportation) + "</transportation>");
            line(3, "<order>" + std::string(to_string(cls.props->order)) + "</order>");
            for (const auto& param : cls.props->parameters) {
                std::string s = "<parameter name=\"" + escape_attribute(param.name) +
                                "\" dataType=\"" + escape_attribute(param.data_type) + "\"";
                if (!param.semantics.empty()) {
                    s += " semantics=\"" + escape_attribute(param.semantics) + "\"";
                }
                s += "/>";
                line(3, s);
            }
        }
        line(2, "</interactionClass>");
        for (const auto& child : cls.children) write_interaction_class(child, path);
    }

    void write_interactions() {
        const bool any = explicit_roots_ || !m_.interaction_root_children.empty();
        if (!any) return;
        line(1, "<interactions>");
        std::string prefix;
        if (explicit_roots_) {
            prefix = std::string(kInteractionRootName);
            line(2, "<interactionClass>");
            line(3, "<name>" + prefix + "</name>");
            line(2, "</interactionClass>");
        }
        for (const auto& cls : m_.interaction_root_children) write_interaction_class(cls, prefix);
        line(1, "</interactions>");
    }

    void write_data_types() {
        if (m_.data_types.empty()) return;
        line(1, "<dataTypes>");
        for (const auto& dt : m_.data_types) {
            line(2, "<dataType name=\"" + escape_attribute(dt.name) + "\" category=\"" +
                        std::string(to_string(dt.category)) + "\" definition=\"" +
                        escape_attribute(dt.definition) + "\"/>");
        }
        line(1, "</dataTypes>");
    }

    void write_dimensions() {
        if (m_.dimensions.empty()) return;
        line(1, "<dimensions>");
        for (const auto& d : m_.dimensions) {
            line(2, "<dimension name=\"" + escape_attribute(d.name) + "\" upperBound=\"" +
                        std::to_string(d.upper_bound) + "\"/>");
        }
        line(1, "</dimensions>");
    }

    void write_transportations() {
        if (m_.transportations.empty()) return;
        line(1, "<transportations>");
        for (const auto& t : m_.transportations) {
            line(2, "<transportation name=\"" + escape_attribute(t.name) + "\" reliability=\"" +
                        std::string(to_string(t.reliability)) + "\"/>");
        }
        line(1, "</transportations>");
    }

    void write_synchronizations() {
        if (m_.synchronization_points.empty()) return;
        line(1, "<synchronizations>");
        for (const auto& sync : m_.synchronization_points) {
            std::string s = "<synchronization label=\"" + escape_attribute(sync.label) +
                            "\" tagDataType=\"" + escape_attribute(sync.tag_data_type) + "\"";
            if (!sync.semantics.empty()) {
                s += " semantics=\"" + escape_attribute(sync.semantics) + "\"";
            }
            s += "/>";
            line(2, s);
        }
        line(1, "</synchronizations>");
    }

    void write_update_rates() {
        if (m_.update_rates.empty()) return;
        line(1, "<updateRates>");
        for (const auto& rate : m_.update_rates) {
            line(2, "<updateRate name=\"" + escape_attribute(rate.name) + "\" rateHz=\"" +
                        escape_attribute(rate.rate_hz) + "\"/>");
        }
        line(1, "</updateRates>");
    }

    void write_switches() {
        if (!m_.switches) return;
        const Switches& s = *m_.switches;
        line(1, std::string("<switches autoProvide=\"") + std::string(to_string(s.auto_provide)) +
                    "\" attributeScopeAdvisory=\"" + std::string(to_string(s.attribute_scope_advisory)) +
                    "\" attributeRelevanceAdvisory=\"" +
                    std::string(to_string(s.attribute_relevance_advisory)) +
                    "\" objectClassRelevanceAdvisory=\"" +
                    std::string(to_string(s.object_class_relevance_advisory)) +
                    "\" interactionRelevanceAdvisory=\"" +
                    std::string(to_string(s.interaction_relevance_advisory)) +
                    "\" serviceReporting=\"" + std::string(to_string(s.service_reporting)) + "\"/>");
    }

    void write_notes() {
        if (m_.notes.empty()) return;
        line(1, "<notes>");
        for (const auto& note : m_.notes) {
            line(2, "<note label=\"" + escape_attribute(note.label) + "\">" +
                        escape_text(note.body) + "</note>");
        }
        line(1, "</notes>");
    }

    const ObjectModule& m_;
    const bool explicit_roots_;
    std::string out_;
};

}  // namespace

std::string serialize_module(const ObjectModule& m) {
    return Writer(m).run();
}

const ParseDiagnostic* ParseResult::first_error() const {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return &d;
    }
    return nullptr;
}

std::string format_diagnostic(const ParseDiagnostic& d) {
    std::string out;
    out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
    out += d.severity == Severity::Error ? "error " : "warning ";
    out += d.rule_id + ": " + d.message;
    return out;
}

}  // namespace fomforge
