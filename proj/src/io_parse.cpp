#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "fomforge/io.hpp"
#include "fomforge/rule_ids.hpp"
#include "xml_reader.hpp"

namespace fomforge {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split_list(std::string_view csv) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        if (comma == std::string_view::npos) {
            items.push_back(trim(csv.substr(start)));
            break;
        }
        items.push_back(trim(csv.substr(start, comma - start)));
        start = comma + 1;
    }
    if (items.size() == 1 && items.front().empty()) items.clear();
    return items;
}

class ModuleParser {
public:
    ParseResult run(std::string_view document) {
        auto xml = xml::read_document(document);
        if (xml.error) {
            error(xml.error->pos, rules::kXmlMalformed, xml.error->message);
            return finish();
        }
        parse_object_model(*xml.root);
        return finish();
    }

private:
    // -- diagnostics ------------------------------------------------------

    void error(xml::Position pos, const char* rule, std::string message) {
        diagnostics_.push_back(
            ParseDiagnostic{Severity::Error, pos.line, pos.column, std::move(message), rule});
        has_error_ = true;
    }

    void warn(xml::Position pos, const char* rule, std::string message) {
        diagnostics_.push_back(
            ParseDiagnostic{Severity::Warning, pos.line, pos.column, std::move(message), rule});
    }

    ParseResult finish() {
        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        if (!has_error_) result.module = std::move(module_);
        return result;
    }

    // -- small element helpers -------------------------------------------

    const xml::Attribute* require_attr(const xml::Element& e, std::string_view name) {
        const auto* attr = e.find_attribute(name);
        if (!attr) {
            error(e.pos, rules::kUnknownElement,
                  "<" + e.name + "> requires attribute '" + std::string(name) + "'");
        }
        return attr;
    }

    void check_attrs(const xml::Element& e, std::initializer_list<std::string_view> allowed) {
        for (const auto& attr : e.attributes) {
            if (std::find(allowed.begin(), allowed.end(), attr.name) == allowed.end()) {
                error(attr.pos, rules::kUnknownElement,
                      "unknown attribute '" + attr.name + "' on <" + e.name + ">");
            }
        }
    }

    void forbid_text(const xml::Element& e) {
        if (e.has_text) {
            error(e.text_pos, rules::kUnknownElement, "unexpected text in <" + e.name + ">");
        }
    }

    void forbid_children(const xml::Element& e) {
        if (!e.children.empty()) {
            error(e.children.front().pos, rules::kUnknownElement,
                  "<" + e.name + "> does not take child elements");
        }
    }

    std::optional<std::string> token_text(const xml::Element& e) {
        forbid_children(e);
        const std::string text = trim(e.text);
        if (text.empty()) {
            error(e.pos, rules::kUnknownElement, "<" + e.name + "> requires text content");
            return std::nullopt;
        }
        return text;
    }

    // -- document ---------------------------------------------------------

    void parse_object_model(const xml::Element& root) {
        if (root.name != "objectModel") {
            error(root.pos, rules::kUnknownElement,
                  "expected root element <objectModel>, found <" + root.name + ">");
            return;
        }
        check_attrs(root, {"name", "modelType", "version"});
        forbid_text(root);

        if (const auto* name = root.find_attribute("name")) {
            if (name->value.empty()) {
                error(name->pos, rules::kIdentification, "module name must not be empty");
            } else if (name->value.find(',') != std::string::npos) {
                error(name->pos, rules::kIdentification, "module name must not contain ','");
            }
            module_.identification.name = name->value;
        } else {
            error(root.pos, rules::kIdentification, "<objectModel> requires attribute 'name'");
        }
        if (const auto* type = root.find_attribute("modelType")) {
            if (auto parsed = parse_model_type(type->value)) {
                module_.identification.model_type = *parsed;
            } else {
                error(type->pos, rules::kBadValue, "unknown modelType '" + type->value + "'");
            }
        } else {
            error(root.pos, rules::kIdentification, "<objectModel> requires attribute 'modelType'");
        }
        if (const auto* version = root.find_attribute("version")) {
            module_.identification.version = version->value;
        } else {
            error(root.pos, rules::kIdentification, "<objectModel> requires attribute 'version'");
        }

        explicit_roots_ = module_.identification.model_type == ModelType::Mim ||
                          module_.identification.model_type == ModelType::Fom ||
                          module_.identification.model_type == ModelType::Som;

        std::unordered_set<std::string> seen_sections;
        for (const auto& section : root.children) {
            if (!seen_sections.insert(section.name).second) {
                error(section.pos, rules::kDuplicateName,
                      "section <" + section.name + "> appears more than once");
                continue;
            }
            if (section.name == "references") parse_references(section);
            else if (section.name == "objects") parse_objects(section);
            else if (section.name == "interactions") parse_interactions(section);
            else if (section.name == "dataTypes") parse_data_types(section);
            else if (section.name == "dimensions") parse_dimensions(section);
            else if (section.name == "transportations") parse_transportations(section);
            else if (section.name == "synchronizations") parse_synchronizations(section);
            else if (section.name == "updateRates") parse_update_rates(section);
            else if (section.name == "switches") parse_switches(section);
            else if (section.name == "notes") parse_notes(section);
            else error(section.pos, rules::kUnknownElement, "unknown section <" + section.name + ">");
        }
    }

    // -- references -------------------------------------------------------

    void parse_references(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        const bool plain_module = module_.identification.model_type == ModelType::FomModule ||
                                  module_.identification.model_type == ModelType::SomModule;
        bool saw_standalone = false;
        bool saw_dependency = false;
        bool saw_composed = false;
        for (const auto& e : section.children) {
            if (e.name != "reference") {
                error(e.pos, rules::kUnknownElement, "unknown element <" + e.name + "> in <references>");
                continue;
            }
            check_attrs(e, {"type", "idents"});
            forbid_text(e);
            forbid_children(e);
            const auto* type = require_attr(e, "type");
            const auto* idents = require_attr(e, "idents");
            if (!type || !idents) continue;

            Reference ref;
            if (type->value == "Standalone") ref.type = ReferenceType::Standalone;
            else if (type->value == "Dependency") ref.type = ReferenceType::Dependency;
            else if (type->value == "ComposedFrom") ref.type = ReferenceType::ComposedFrom;
            else {
                ref.type = ReferenceType::Other;
                ref.other_label = type->value;
                if (ref.other_label.empty()) {
                    error(type->pos, rules::kBadValue, "reference type must not be empty");
                    continue;
                }
            }

            const bool is_na = idents->value == "NA";
            if (!is_na) ref.identifications = split_list(idents->value);

            if (ref.type == ReferenceType::Standalone && !is_na) {
                error(idents->pos, rules::kReference,
                      "a Standalone reference carries the literal identification token NA");
                continue;
            }
            if (ref.type != ReferenceType::Standalone && (is_na || ref.identifications.empty())) {
                error(idents->pos, rules::kReference,
                      std::string(type->value) + " reference must list at least one module name");
                continue;
            }
            bool bad_ident = false;
            for (const auto& ident : ref.identifications) {
                if (ident.empty()) {
                    error(idents->pos, rules::kReference, "empty name in reference identification list");
                    bad_ident = true;
                }
            }
            if (bad_ident) continue;

            if (ref.type == ReferenceType::Standalone) {
                if (saw_dependency) {
                    error(e.pos, rules::kReference,
                          "module declares both Standalone and Dependency references");
                }
                saw_standalone = true;
            }
            if (ref.type == ReferenceType::Dependency) {
                if (saw_standalone) {
                    error(e.pos, rules::kReference,
                          "module declares both Standalone and Dependency references");
                }
                if (plain_module && saw_dependency) {
                    error(e.pos, rules::kReference, "module declares more than one Dependency reference");
                }
                saw_dependency = true;
            }
            if (ref.type == ReferenceType::ComposedFrom) {
                if (plain_module && saw_composed) {
                    error(e.pos, rules::kReference,
                          "module declares more than one ComposedFrom reference");
                }
                saw_composed = true;
            }
            module_.identification.references.push_back(std::move(ref));
        }
    }

    // -- class paths ------------------------------------------------------

    struct ParsedPath {
        std::vector<std::string> relative;  // below the implicit root
        std::string display;                // path exactly as written
        bool is_root = false;               // names the root itself (explicit style)
    };

    // Validates tokens, root-name placement and superclass closure against
    // the classes declared so far. Returns nullopt after reporting.
    std::optional<ParsedPath> resolve_path(const xml::Element& name_element,
                                           const std::string& text, bool objects,
                                           const std::unordered_set<std::string>& declared,
                                           bool root_declared) {
        const std::string_view root_name = objects ? kObjectRootName : kInteractionRootName;
        const std::string_view other_root = objects ? kInteractionRootName : kObjectRootName;
        std::vector<std::string> segments = split_path(text);

        for (const auto& segment : segments) {
            if (!is_valid_name_token(segment)) {
                error(name_element.pos, rules::kBadToken,
                      "'" + segment + "' in '" + text + "' is not a valid name token");
                return std::nullopt;
            }
        }

        ParsedPath path;
        path.display = text;

        if (explicit_roots_) {
            if (segments.front() != root_name) {
                error(name_element.pos, rules::kReservedRoot,
                      "paths in this document start at " + std::string(root_name) + "; got '" +
                          text + "'");
                return std::nullopt;
            }
            segments.erase(segments.begin());
            path.is_root = segments.empty();
        } else {
            for (const auto& segment : segments) {
                if (segment == kObjectRootName || segment == kInteractionRootName) {
                    error(name_element.pos, rules::kReservedRoot,
                          "the implicit roots may not be named in a module document");
                    return std::nullopt;
                }
            }
            if (objects && segments.front() == kManagerClassName) {
                error(name_element.pos, rules::kReservedRoot,
                      "the management class subtree may only be defined by a MIM");
                return std::nullopt;
            }
            if (!objects && is_mom_interaction(segments.front())) {
                error(name_element.pos, rules::kReservedRoot,
                      "management interaction '" + segments.front() +
                          "' may only be defined by a MIM");
                return std::nullopt;
            }
        }
        for (const auto& segment : segments) {
            if (segment == other_root || (!path.is_root && segment == root_name)) {
                error(name_element.pos, rules::kReservedRoot,
                      "'" + segment + "' is reserved for the implicit roots");
                return std::nullopt;
            }
        }

        if (path.is_root) {
            path.relative = {};
            return path;
        }

        if (explicit_roots_ && !root_declared) {
            error(name_element.pos, rules::kClosure,
                  "class '" + text + "' requires prior declaration of ancestor '" +
                      std::string(root_name) + "'");
            return std::nullopt;
        }
        std::string prefix;
        for (std::size_t k = 0; k + 1 < segments.size(); ++k) {
            prefix = prefix.empty() ? segments[k] : prefix + "." + segments[k];
            if (!declared.contains(prefix)) {
                const std::string shown =
                    explicit_roots_ ? std::string(root_name) + "." + prefix : prefix;
                error(name_element.pos, rules::kClosure,
                      "class '" + text + "' requires prior declaration of ancestor '" + shown + "'");
                return std::nullopt;
            }
        }
        const std::string full = prefix.empty() ? segments.back() : prefix + "." + segments.back();
        if (declared.contains(full)) {
            error(name_element.pos, rules::kDuplicateName, "duplicate class '" + text + "'");
            return std::nullopt;
        }
        path.relative = std::move(segments);
        return path;
    }

    static bool is_mom_interaction(std::string_view name) {
        return name == "HLArequestFOMmoduleData" || name == "HLAreportFOMmoduleData" ||
               name == "HLArequestMIMData" || name == "HLAreportMIMData";
    }

    template <typename Class>
    std::vector<Class>* locate_children(std::vector<Class>* roots,
                                        std::span<const std::string> parents) {
        for (const auto& segment : parents) {
            Class* found = nullptr;
            for (auto& node : *roots) {
                if (node.name == segment) {
                    found = &node;
                    break;
                }
            }
            if (!found) return nullptr;  // closure guarantees this does not happen
            roots = &found->children;
        }
        return roots;
    }

    // -- attributes and parameters ----------------------------------------

    std::optional<AttributeDef> parse_attribute(const xml::Element& e, const char* owner) {
        check_attrs(e, {"name", "dataType", "transportation", "order", "dimensions", "semantics"});
        forbid_text(e);
        forbid_children(e);
        const auto* name = require_attr(e, "name");
        const auto* data_type = require_attr(e, "dataType");
        const auto* transportation = require_attr(e, "transportation");
        const auto* order = require_attr(e, "order");
        if (!name || !data_type || !transportation || !order) return std::nullopt;

        AttributeDef attr;
        attr.name = name->value;
        attr.data_type = data_type->value;
        attr.transportation = transportation->value;
        bool ok = true;
        if (auto parsed = parse_order_type(order->value)) {
            attr.order = *parsed;
        } else {
            error(order->pos, rules::kBadValue, "unknown order '" + order->value + "'");
            ok = false;
        }
        for (const auto* token : {&attr.name, &attr.data_type, &attr.transportation}) {
            if (!is_valid_name_token(*token)) {
                error(e.pos, rules::kBadToken,
                      "'" + *token + "' in attribute of " + owner + " is not a valid name token");
                ok = false;
            }
        }
        if (const auto* dims = e.find_attribute("dimensions")) {
            attr.dimensions = split_list(dims->value);
            for (const auto& dim : attr.dimensions) {
                if (!is_valid_name_token(dim)) {
                    error(dims->pos, rules::kBadToken,
                          "dimension '" + dim + "' is not a valid name token");
                    ok = false;
                }
            }
        }
        if (const auto* semantics = e.find_attribute("semantics")) {
            attr.semantics = semantics->value;
        }
        return ok ? std::optional<AttributeDef>(std::move(attr)) : std::nullopt;
    }

    std::optional<ParameterDef> parse_parameter(const xml::Element& e, const char* owner) {
        check_attrs(e, {"name", "dataType", "semantics"});
        forbid_text(e);
        forbid_children(e);
        const auto* name = require_attr(e, "name");
        const auto* data_type = require_attr(e, "dataType");
        if (!name || !data_type) return std::nullopt;
        ParameterDef param;
        param.name = name->value;
        param.data_type = data_type->value;
        bool ok = true;
        for (const auto* token : {&param.name, &param.data_type}) {
            if (!is_valid_name_token(*token)) {
                error(e.pos, rules::kBadToken,
                      "'" + *token + "' in parameter of " + owner + " is not a valid name token");
                ok = false;
            }
        }
        if (const auto* semantics = e.find_attribute("semantics")) {
            param.semantics = semantics->value;
        }
        return ok ? std::optional<ParameterDef>(std::move(param)) : std::nullopt;
    }

    // -- object classes ----------------------------------------------------

    void parse_objects(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "objectClass") {
                error(e.pos, rules::kUnknownElement, "unknown element <" + e.name + "> in <objects>");
                continue;
            }
            parse_object_class(e);
        }
    }

    void parse_object_class(const xml::Element& e) {
        check_attrs(e, {});
        forbid_text(e);

        const xml::Element* name_element = nullptr;
        const xml::Element* sharing_element = nullptr;
        std::vector<const xml::Element*> attribute_elements;
        bool shape_ok = true;
        for (const auto& child : e.children) {
            if (child.name == "name") {
                if (name_element) {
                    error(child.pos, rules::kDuplicateName, "<objectClass> has more than one <name>");
                    shape_ok = false;
                }
                name_element = &child;
            } else if (child.name == "sharing") {
                if (sharing_element) {
                    error(child.pos, rules::kDuplicateName,
                          "<objectClass> has more than one <sharing>");
                    shape_ok = false;
                }
                sharing_element = &child;
            } else if (child.name == "attribute") {
                attribute_elements.push_back(&child);
            } else {
                error(child.pos, rules::kUnknownElement,
                      "unknown element <" + child.name + "> in <objectClass>");
                shape_ok = false;
            }
        }
        if (!name_element) {
            error(e.pos, rules::kUnknownElement, "<objectClass> requires a <name> child");
            return;
        }
        const auto text = token_text(*name_element);
        if (!text || !shape_ok) return;

        auto path = resolve_path(*name_element, *text, /*objects=*/true, declared_objects_,
                                 object_root_declared_);
        if (!path) return;

        if (path->is_root) {
            if (object_root_declared_) {
                error(name_element->pos, rules::kDuplicateName,
                      "the object root is declared more than once");
                return;
            }
            if (sharing_element) {
                error(sharing_element->pos, rules::kUnknownElement,
                      "the object root declaration carries attributes only, no sharing");
                return;
            }
            object_root_declared_ = true;
            std::unordered_set<std::string> attr_names;
            for (const auto* attr_element : attribute_elements) {
                if (auto attr = parse_attribute(*attr_element, "the object root")) {
                    if (!attr_names.insert(attr->name).second) {
                        error(attr_element->pos, rules::kDuplicateName,
                              "duplicate attribute '" + attr->name + "' on the object root");
                        continue;
                    }
                    module_.object_root_attributes.push_back(std::move(*attr));
                }
            }
            return;
        }

        ObjectClassDef cls;
        cls.name = path->relative.back();
        const bool has_props = sharing_element != nullptr || !attribute_elements.empty();
        if (has_props && !sharing_element) {
            error(e.pos, rules::kScaffolding,
                  "class '" + *text +
                      "' declares attributes but no sharing; a scaffolding description carries "
                      "only a name");
            return;
        }
        if (sharing_element) {
            const auto sharing_text = token_text(*sharing_element);
            if (!sharing_text) return;
            const auto sharing = parse_sharing(*sharing_text);
            if (!sharing) {
                error(sharing_element->pos, rules::kBadValue,
                      "unknown sharing '" + *sharing_text + "'");
                return;
            }
            ObjectClassProps props;
            props.sharing = *sharing;
            std::unordered_set<std::string> attr_names;
            for (const auto* attr_element : attribute_elements) {
                if (auto attr = parse_attribute(*attr_element, path->display.c_str())) {
                    if (!attr_names.insert(attr->name).second) {
                        error(attr_element->pos, rules::kDuplicateName,
                              "duplicate attribute '" + attr->name + "' in class '" + *text + "'");
                        continue;
                    }
                    props.attributes.push_back(std::move(*attr));
                }
            }
            cls.props = std::move(props);
        }

        auto* siblings = locate_children(
            &module_.object_root_children,
            std::span<const std::string>(path->relative.data(), path->relative.size() - 1));
        if (!siblings) return;
        siblings->push_back(std::move(cls));
        declared_objects_.insert(join_path(path->relative));
    }

    // -- interaction classes ------------------------------------------------

    void parse_interactions(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "interactionClass") {
                error(e.pos, rules::kUnknownElement,
                      "unknown element <" + e.name + "> in <interactions>");
                continue;
            }
            parse_interaction_class(e);
        }
    }

    void parse_interaction_class(const xml::Element& e) {
        check_attrs(e, {});
        forbid_text(e);

        const xml::Element* name_element = nullptr;
        const xml::Element* sharing_element = nullptr;
        const xml::Element* transportation_element = nullptr;
        const xml::Element* order_element = nullptr;
        std::vector<const xml::Element*> parameter_elements;
        bool shape_ok = true;
        auto unique = [&](const xml::Element*& slot, const xml::Element& child) {
            if (slot) {
                error(child.pos, rules::kDuplicateName,
                      "<interactionClass> has more than one <" + child.name + ">");
                shape_ok = false;
            }
            slot = &child;
        };
        for (const auto& child : e.children) {
            if (child.name == "name") unique(name_element, child);
            else if (child.name == "sharing") unique(sharing_element, child);
            else if (child.name == "transportation") unique(transportation_element, child);
            else if (child.name == "order") unique(order_element, child);
            else if (child.name == "parameter") parameter_elements.push_back(&child);
            else {
                error(child.pos, rules::kUnknownElement,
                      "unknown element <" + child.name + "> in <interactionClass>");
                shape_ok = false;
            }
        }
        if (!name_element) {
            error(e.pos, rules::kUnknownElement, "<interactionClass> requires a <name> child");
            return;
        }
        const auto text = token_text(*name_element);
        if (!text || !shape_ok) return;

        auto path = resolve_path(*name_element, *text, /*objects=*/false, declared_interactions_,
                                 interaction_root_declared_);
        if (!path) return;

        if (path->is_root) {
            if (interaction_root_declared_) {
                error(name_element->pos, rules::kDuplicateName,
                      "the interaction root is declared more than once");
                return;
            }
            if (sharing_element || transportation_element || order_element ||
                !parameter_elements.empty()) {
                error(e.pos, rules::kUnknownElement,
                      "the interaction root declaration carries a name only");
                return;
            }
            interaction_root_declared_ = true;
            return;
        }

        InteractionClassDef cls;
        cls.name = path->relative.back();
        const bool has_props = sharing_element || transportation_element || order_element ||
                               !parameter_elements.empty();
        if (has_props) {
            if (!sharing_element || !transportation_element || !order_element) {
                error(e.pos, rules::kScaffolding,
                      "interaction '" + *text +
                          "' declares properties but is missing sharing, transportation or order");
                return;
            }
            const auto sharing_text = token_text(*sharing_element);
            const auto transportation_text = token_text(*transportation_element);
            const auto order_text = token_text(*order_element);
            if (!sharing_text || !transportation_text || !order_text) return;
            const auto sharing = parse_sharing(*sharing_text);
            if (!sharing) {
                error(sharing_element->pos, rules::kBadValue,
                      "unknown sharing '" + *sharing_text + "'");
                return;
            }
            const auto order = parse_order_type(*order_text);
            if (!order) {
                error(order_element->pos, rules::kBadValue, "unknown order '" + *order_text + "'");
                return;
            }
            if (!is_valid_name_token(*transportation_text)) {
                error(transportation_element->pos, rules::kBadToken,
                      "'" + *transportation_text + "' is not a valid name token");
                return;
            }
            InteractionClassProps props;
            props.sharing = *sharing;
            props.transportation = *transportation_text;
            props.order = *order;
            std::unordered_set<std::string> param_names;
            for (const auto* param_element : parameter_elements) {
                if (auto param = parse_parameter(*param_element, path->display.c_str())) {
                    if (!param_names.insert(param->name).second) {
                        error(param_element->pos, rules::kDuplicateName,
                              "duplicate parameter '" + param->name + "' in interaction '" + *text +
                                  "'");
                        continue;
                    }
                    props.parameters.push_back(std::move(*param));
                }
            }
            cls.props = std::move(props);
        }

        auto* siblings = locate_children(
            &module_.interaction_root_children,
            std::span<const std::string>(path->relative.data(), path->relative.size() - 1));
        if (!siblings) return;
        siblings->push_back(std::move(cls));
        declared_interactions_.insert(join_path(path->relative));
    }

    // -- flat tables --------------------------------------------------------

    void parse_data_types(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "dataType") {
                error(e.pos, rules::kUnknownElement, "unknown element <" + e.name + "> in <dataTypes>");
                continue;
            }
            check_attrs(e, {"name", "category", "definition"});
            forbid_text(e);
            forbid_children(e);
            const auto* name = require_attr(e, "name");
            const auto* category = require_attr(e, "category");
            if (!name || !category) continue;
            if (!is_valid_name_token(name->value)) {
                error(name->pos, rules::kBadToken,
                      "dataType name '" + name->value + "' is not a valid name token");
                continue;
            }
            const auto parsed_category = parse_data_type_category(category->value);
            if (!parsed_category) {
                error(category->pos, rules::kBadValue,
                      "unknown dataType category '" + category->value + "'");
                continue;
            }
            if (module_.find_data_type(name->value)) {
                error(name->pos, rules::kDuplicateName, "duplicate dataType '" + name->value + "'");
                continue;
            }
            DataTypeDef dt;
            dt.name = name->value;
            dt.category = *parsed_category;
            if (const auto* definition = e.find_attribute("definition")) {
                dt.definition = normalize_definition_text(definition->value);
            }
            module_.data_types.push_back(std::move(dt));
        }
    }

    void parse_dimensions(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "dimension") {
                error(e.pos, rules::kUnknownElement, "unknown element <" + e.name + "> in <dimensions>");
                continue;
            }
            check_attrs(e, {"name", "upperBound"});
            forbid_text(e);
            forbid_children(e);
            const auto* name = require_attr(e, "name");
            const auto* bound = require_attr(e, "upperBound");
            if (!name || !bound) continue;
            if (!is_valid_name_token(name->value)) {
                error(name->pos, rules::kBadToken,
                      "dimension name '" + name->value + "' is not a valid name token");
                continue;
            }
            std::uint64_t value = 0;
            const auto [ptr, ec] = std::from_chars(
                bound->value.data(), bound->value.data() + bound->value.size(), value);
            if (ec != std::errc{} || ptr != bound->value.data() + bound->value.size() || value == 0) {
                error(bound->pos, rules::kBadValue,
                      "upperBound '" + bound->value + "' is not a positive integer");
                continue;
            }
            if (module_.find_dimension(name->value)) {
                error(name->pos, rules::kDuplicateName, "duplicate dimension '" + name->value + "'");
                continue;
            }
            module_.dimensions.push_back(Dimension{name->value, value});
        }
    }

    void parse_transportations(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "transportation") {
                error(e.pos, rules::kUnknownElement,
                      "unknown element <" + e.name + "> in <transportations>");
                continue;
            }
            check_attrs(e, {"name", "reliability"});
            forbid_text(e);
            forbid_children(e);
            const auto* name = require_attr(e, "name");
            const auto* reliability = require_attr(e, "reliability");
            if (!name || !reliability) continue;
            if (!is_valid_name_token(name->value)) {
                error(name->pos, rules::kBadToken,
                      "transportation name '" + name->value + "' is not a valid name token");
                continue;
            }
            const auto parsed = parse_reliability(reliability->value);
            if (!parsed) {
                error(reliability->pos, rules::kBadValue,
                      "unknown reliability '" + reliability->value + "'");
                continue;
            }
            if (module_.find_transportation(name->value)) {
                error(name->pos, rules::kDuplicateName,
                      "duplicate transportation '" + name->value + "'");
                continue;
            }
            module_.transportations.push_back(Transportation{name->value, *parsed});
        }
    }

    void parse_synchronizations(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "synchronization") {
                error(e.pos, rules::kUnknownElement,
                      "unknown element <" + e.name + "> in <synchronizations>");
                continue;
            }
            check_attrs(e, {"label", "tagDataType", "semantics"});
            forbid_text(e);
            forbid_children(e);
            const auto* label = require_attr(e, "label");
            const auto* tag = require_attr(e, "tagDataType");
            if (!label || !tag) continue;
            if (label->value.empty()) {
                error(label->pos, rules::kBadToken, "synchronization label must not be empty");
                continue;
            }
            if (!is_valid_name_token(tag->value)) {
                error(tag->pos, rules::kBadToken,
                      "tagDataType '" + tag->value + "' is not a valid name token");
                continue;
            }
            if (module_.find_synchronization(label->value)) {
                error(label->pos, rules::kDuplicateName,
                      "duplicate synchronization '" + label->value + "'");
                continue;
            }
            SynchronizationPoint sync;
            sync.label = label->value;
            sync.tag_data_type = tag->value;
            if (const auto* semantics = e.find_attribute("semantics")) {
                sync.semantics = semantics->value;
            }
            module_.synchronization_points.push_back(std::move(sync));
        }
    }

    void parse_update_rates(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "updateRate") {
                error(e.pos, rules::kUnknownElement,
                      "unknown element <" + e.name + "> in <updateRates>");
                continue;
            }
            check_attrs(e, {"name", "rateHz"});
            forbid_text(e);
            forbid_children(e);
            const auto* name = require_attr(e, "name");
            const auto* rate = require_attr(e, "rateHz");
            if (!name || !rate) continue;
            if (!is_valid_name_token(name->value)) {
                error(name->pos, rules::kBadToken,
                      "updateRate name '" + name->value + "' is not a valid name token");
                continue;
            }
            const auto canonical = canonical_rate(rate->value);
            if (!canonical) {
                error(rate->pos, rules::kBadValue,
                      "rateHz '" + rate->value + "' is not a positive decimal");
                continue;
            }
            if (module_.find_update_rate(name->value)) {
                error(name->pos, rules::kDuplicateName, "duplicate updateRate '" + name->value + "'");
                continue;
            }
            module_.update_rates.push_back(UpdateRate{name->value, *canonical});
        }
    }

    void parse_switches(const xml::Element& e) {
        check_attrs(e, {"autoProvide", "attributeScopeAdvisory", "attributeRelevanceAdvisory",
                        "objectClassRelevanceAdvisory", "interactionRelevanceAdvisory",
                        "serviceReporting"});
        forbid_text(e);
        forbid_children(e);
        Switches switches;
        bool ok = true;
        auto read = [&](std::string_view attr_name, SwitchValue& slot) {
            const auto* attr = e.find_attribute(attr_name);
            if (!attr) {
                error(e.pos, rules::kSwitches,
                      "switches table requires attribute '" + std::string(attr_name) + "'");
                ok = false;
                return;
            }
            if (auto parsed = parse_switch_value(attr->value)) {
                slot = *parsed;
            } else {
                error(attr->pos, rules::kSwitches,
                      "switch value '" + attr->value + "' must be Enabled or Disabled");
                ok = false;
            }
        };
        read("autoProvide", switches.auto_provide);
        read("attributeScopeAdvisory", switches.attribute_scope_advisory);
        read("attributeRelevanceAdvisory", switches.attribute_relevance_advisory);
        read("objectClassRelevanceAdvisory", switches.object_class_relevance_advisory);
        read("interactionRelevanceAdvisory", switches.interaction_relevance_advisory);
        read("serviceReporting", switches.service_reporting);
        if (ok) module_.switches = switches;
    }

    void parse_notes(const xml::Element& section) {
        check_attrs(section, {});
        forbid_text(section);
        for (const auto& e : section.children) {
            if (e.name != "note") {
                error(e.pos, rules::kUnknownElement, "unknown element <" + e.name + "> in <notes>");
                continue;
            }
            check_attrs(e, {"label"});
            forbid_children(e);
            const auto* label = require_attr(e, "label");
            if (!label) continue;
            if (label->value.empty()) {
                error(label->pos, rules::kBadToken, "note label must not be empty");
                continue;
            }
            if (module_.find_note(label->value)) {
                error(label->pos, rules::kDuplicateName, "duplicate note '" + label->value + "'");
                continue;
            }
            module_.notes.push_back(NoteEntry{label->value, e.text});
        }
    }

    ObjectModule module_;
    std::vector<ParseDiagnostic> diagnostics_;
    bool has_error_ = false;
    bool explicit_roots_ = false;
    bool object_root_declared_ = false;
    bool interaction_root_declared_ = false;
    std::unordered_set<std::string> declared_objects_;
    std::unordered_set<std::string> declared_interactions_;
};

}  // namespace

ParseResult parse_module(std::string_view document) {
    return ModuleParser().run(document);
}

}  // namespace fomforge
