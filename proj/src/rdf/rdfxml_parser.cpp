#include <expat.h>

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "ontolookup/rdf/iri.hpp"
#include "ontolookup/rdf/vocab.hpp"
#include "parsers.hpp"

namespace ontolookup::rdf::detail {
namespace {

constexpr char kNsSeparator = ' ';
constexpr std::string_view kXmlNs = "http://www.w3.org/XML/1998/namespace";

struct QName {
  std::string ns;
  std::string local;
  std::string prefix;

  std::string iri() const { return ns + local; }
  bool is_rdf(std::string_view name) const { return ns == vocab::rdf::ns && local == name; }
  std::string display() const { return prefix.empty() ? local : prefix + ":" + local; }
};

// Names arrive as "uri<sep>local<sep>prefix" (triplet mode) or just "local".
QName split_name(const XML_Char* raw) {
  std::string_view s(raw);
  QName q;
  auto first = s.find(kNsSeparator);
  if (first == std::string_view::npos) {
    q.local = std::string(s);
    return q;
  }
  q.ns = std::string(s.substr(0, first));
  auto rest = s.substr(first + 1);
  auto second = rest.find(kNsSeparator);
  if (second == std::string_view::npos) {
    q.local = std::string(rest);
  } else {
    q.local = std::string(rest.substr(0, second));
    q.prefix = std::string(rest.substr(second + 1));
  }
  return q;
}

bool is_whitespace(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

enum class FrameKind { root, node, property, collection, resource };

struct Frame {
  FrameKind kind;
  std::string base;
  std::string lang;
  Term subject;  // node: the node; property/collection: the owning subject; resource: the new node
  std::string predicate;
  std::string datatype;
  std::string text;
  bool has_child = false;
  bool object_emitted = false;
  Term child;
  std::vector<Term> items;
  int li_counter = 0;
};

struct Attribute {
  QName name;
  std::string value;
};

class RdfXmlParser {
 public:
  RdfXmlParser(const ParseOptions& options, const TripleSink& sink)
      : options_(options), sink_(sink), parser_(XML_ParserCreateNS(nullptr, kNsSeparator)) {
    XML_SetReturnNSTriplet(parser_, XML_TRUE);
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &RdfXmlParser::on_start, &RdfXmlParser::on_end);
    XML_SetCharacterDataHandler(parser_, &RdfXmlParser::on_text);
  }
  ~RdfXmlParser() { XML_ParserFree(parser_); }
  RdfXmlParser(const RdfXmlParser&) = delete;
  RdfXmlParser& operator=(const RdfXmlParser&) = delete;

  void run(std::string_view document) {
    auto status = XML_Parse(parser_, document.data(), static_cast<int>(document.size()), XML_TRUE);
    if (pending_) std::rethrow_exception(pending_);
    if (status != XML_STATUS_OK) {
      auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_));
      auto column = static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser_)) + 1;
      throw ParseError(std::string("XML error: ") + XML_ErrorString(XML_GetErrorCode(parser_)) +
                           " at line " + std::to_string(line) + ", column " +
                           std::to_string(column) + " (element " + path() + ")",
                       line, column, path());
    }
  }

 private:
  static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** atts) {
    auto* p = static_cast<RdfXmlParser*>(self);
    if (p->pending_) return;
    try {
      p->start_element(name, atts);
    } catch (...) {
      p->pending_ = std::current_exception();
      XML_StopParser(p->parser_, XML_FALSE);
    }
  }

  static void XMLCALL on_end(void* self, const XML_Char* /*name*/) {
    auto* p = static_cast<RdfXmlParser*>(self);
    if (p->pending_) return;
    try {
      p->end_element();
    } catch (...) {
      p->pending_ = std::current_exception();
      XML_StopParser(p->parser_, XML_FALSE);
    }
  }

  static void XMLCALL on_text(void* self, const XML_Char* s, int len) {
    auto* p = static_cast<RdfXmlParser*>(self);
    if (p->pending_) return;
    try {
      p->text(std::string_view(s, static_cast<std::size_t>(len)));
    } catch (...) {
      p->pending_ = std::current_exception();
      XML_StopParser(p->parser_, XML_FALSE);
    }
  }

  std::string path() const {
    std::string out;
    for (const auto& element : path_) {
      out += '/';
      out += element;
    }
    return out.empty() ? "/" : out;
  }

  [[noreturn]] void fail(const std::string& message) const {
    auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_));
    auto column = static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser_)) + 1;
    throw ParseError(message + " (element " + path() + ")", line, column, path());
  }

  [[noreturn]] void unsupported(const std::string& construct) const {
    auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_));
    auto column = static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser_)) + 1;
    throw UnsupportedConstruct(construct, path(), line, column);
  }

  void emit(const Term& s, std::string p, Term o) { sink_(Triple{s, std::move(p), std::move(o)}); }

  Term fresh_blank() { return Term::blank(options_.blank_prefix + "g" + std::to_string(++anon_)); }

  Term labeled_blank(const std::string& id) {
    return Term::blank(options_.blank_prefix + "l" + id);
  }

  std::string resolve(const std::string& base, const std::string& ref) const {
    if (is_absolute_iri(ref)) return resolve_iri("", ref);
    if (base.empty()) fail("relative IRI '" + ref + "' with no base IRI");
    return resolve_iri(base, ref);
  }

  void start_element(const XML_Char* raw_name, const XML_Char** raw_atts) {
    QName name = split_name(raw_name);
    path_.push_back(name.display());

    std::string base = frames_.empty() ? options_.base_iri : frames_.back().base;
    std::string lang = frames_.empty() ? std::string{} : frames_.back().lang;
    std::vector<Attribute> atts;
    for (std::size_t i = 0; raw_atts[i] != nullptr; i += 2) {
      QName an = split_name(raw_atts[i]);
      std::string value = raw_atts[i + 1];
      if (an.ns == kXmlNs) {
        if (an.local == "lang") lang = normalize_language_tag(value);
        if (an.local == "base") base = std::string(strip_fragment(resolve(base, value)));
        continue;
      }
      // Unqualified RDF syntax attributes are accepted for older documents.
      if (an.ns.empty()) {
        static constexpr std::string_view kLegacy[] = {"about", "resource", "ID",
                                                       "nodeID", "datatype", "parseType"};
        bool legacy = false;
        for (auto l : kLegacy) legacy = legacy || an.local == l;
        if (!legacy) continue;
        an.ns = std::string(vocab::rdf::ns);
      }
      atts.push_back({std::move(an), std::move(value)});
    }

    if (name.ns.empty()) fail("element '" + name.local + "' has no namespace");

    if (frames_.empty() && name.is_rdf("RDF")) {
      frames_.push_back(Frame{.kind = FrameKind::root, .base = base, .lang = lang});
      return;
    }
    bool expects_node = frames_.empty() || frames_.back().kind == FrameKind::root ||
                        frames_.back().kind == FrameKind::property ||
                        frames_.back().kind == FrameKind::collection;
    if (expects_node) {
      node_element(name, atts, base, lang);
    } else {
      property_element(name, atts, base, lang);
    }
  }

  void node_element(const QName& name, const std::vector<Attribute>& atts, const std::string& base,
                    const std::string& lang) {
    if (name.is_rdf("li") || name.is_rdf("RDF")) fail("'" + name.display() + "' is not a node element");
    if (!frames_.empty() && frames_.back().kind == FrameKind::property) {
      Frame& parent = frames_.back();
      if (parent.object_emitted) fail("property element with rdf:resource cannot contain a node");
      if (parent.has_child) fail("property element contains more than one node");
      if (!is_whitespace(parent.text)) fail("mixed text and element content");
    }

    Term subject;
    bool have_subject = false;
    for (const auto& a : atts) {
      if (a.name.ns != vocab::rdf::ns) continue;
      const std::string& l = a.name.local;
      if (l == "about") {
        subject = Term::iri(resolve(base, a.value));
        have_subject = true;
      } else if (l == "ID") {
        subject = Term::iri(resolve(base, "#" + a.value));
        have_subject = true;
      } else if (l == "nodeID") {
        subject = labeled_blank(a.value);
        have_subject = true;
      } else if (l == "aboutEach" || l == "aboutEachPrefix" || l == "bagID") {
        unsupported("rdf:" + l);
      }
    }
    if (!have_subject) subject = fresh_blank();

    if (!name.is_rdf("Description")) emit(subject, std::string(vocab::rdf::type), Term::iri(name.iri()));
    for (const auto& a : atts) {
      if (a.name.ns == vocab::rdf::ns) {
        const std::string& l = a.name.local;
        if (l == "about" || l == "ID" || l == "nodeID") continue;
        if (l == "type") {
          emit(subject, std::string(vocab::rdf::type), Term::iri(resolve(base, a.value)));
          continue;
        }
        if (l == "resource" || l == "datatype" || l == "parseType" || l == "li") {
          fail("rdf:" + l + " is not allowed on a node element");
        }
      }
      emit(subject, a.name.iri(), Term::literal(a.value, {}, lang));
    }

    if (!frames_.empty()) {
      Frame& parent = frames_.back();
      if (parent.kind == FrameKind::property) {
        parent.has_child = true;
        parent.child = subject;
      } else if (parent.kind == FrameKind::collection) {
        parent.items.push_back(subject);
      }
    }
    frames_.push_back(Frame{.kind = FrameKind::node, .base = base, .lang = lang, .subject = subject});
  }

  void property_element(const QName& name, const std::vector<Attribute>& atts,
                        const std::string& base, const std::string& lang) {
    Frame& owner = frames_.back();
    std::string predicate;
    if (name.is_rdf("li")) {
      predicate = std::string(vocab::rdf::ns) + "_" + std::to_string(++owner.li_counter);
    } else if (name.is_rdf("Description") || name.is_rdf("RDF")) {
      fail("'" + name.display() + "' is not a property element");
    } else {
      predicate = name.iri();
    }
    const Term subject = owner.subject;

    Frame frame{.kind = FrameKind::property, .base = base, .lang = lang, .subject = subject,
                .predicate = predicate};
    std::optional<Term> object;
    std::string parse_type;
    std::vector<const Attribute*> property_attributes;
    for (const auto& a : atts) {
      if (a.name.ns == vocab::rdf::ns) {
        const std::string& l = a.name.local;
        if (l == "resource") {
          object = Term::iri(resolve(base, a.value));
          continue;
        }
        if (l == "nodeID") {
          object = labeled_blank(a.value);
          continue;
        }
        if (l == "datatype") {
          frame.datatype = resolve(base, a.value);
          continue;
        }
        if (l == "parseType") {
          parse_type = a.value;
          continue;
        }
        if (l == "ID") unsupported("rdf:ID on a property element (reification)");
        if (l == "bagID") unsupported("rdf:bagID");
        if (l == "about" || l == "aboutEach" || l == "aboutEachPrefix") {
          fail("rdf:" + l + " is not allowed on a property element");
        }
      }
      property_attributes.push_back(&a);
    }

    if (!parse_type.empty()) {
      if (object || !property_attributes.empty() || !frame.datatype.empty()) {
        fail("rdf:parseType cannot be combined with other attributes");
      }
      if (parse_type == "Resource") {
        Term node = fresh_blank();
        emit(subject, predicate, node);
        frames_.push_back(Frame{.kind = FrameKind::resource, .base = base, .lang = lang,
                                .subject = node});
        return;
      }
      if (parse_type == "Collection") {
        frame.kind = FrameKind::collection;
        frames_.push_back(std::move(frame));
        return;
      }
      unsupported("rdf:parseType=\"" + parse_type + "\"");
    }

    if (object || !property_attributes.empty()) {
      if (!frame.datatype.empty()) fail("rdf:datatype on an empty property element with attributes");
      Term target = object ? *object : fresh_blank();
      emit(subject, predicate, target);
      for (const auto* a : property_attributes) {
        if (a->name.is_rdf("type")) {
          emit(target, std::string(vocab::rdf::type), Term::iri(resolve(base, a->value)));
        } else {
          emit(target, a->name.iri(), Term::literal(a->value, {}, lang));
        }
      }
      frame.object_emitted = true;
    }
    frames_.push_back(std::move(frame));
  }

  void text(std::string_view s) {
    if (frames_.empty()) return;
    Frame& top = frames_.back();
    if (top.kind == FrameKind::property) {
      top.text.append(s);
    } else if (!is_whitespace(s)) {
      fail("unexpected text content");
    }
  }

  void end_element() {
    Frame frame = std::move(frames_.back());
    frames_.pop_back();
    switch (frame.kind) {
      case FrameKind::root:
      case FrameKind::node:
      case FrameKind::resource:
        break;
      case FrameKind::property:
        if (frame.object_emitted) {
          if (frame.has_child || !is_whitespace(frame.text)) {
            fail("property element with rdf:resource must be empty");
          }
        } else if (frame.has_child) {
          if (!is_whitespace(frame.text)) fail("mixed text and element content");
          emit(frame.subject, frame.predicate, frame.child);
        } else if (!frame.datatype.empty()) {
          emit(frame.subject, frame.predicate, Term::literal(frame.text, frame.datatype));
        } else {
          emit(frame.subject, frame.predicate, Term::literal(frame.text, {}, frame.lang));
        }
        break;
      case FrameKind::collection: {
        Term head = Term::iri(std::string(vocab::rdf::nil));
        for (auto it = frame.items.rbegin(); it != frame.items.rend(); ++it) {
          Term cell = fresh_blank();
          emit(cell, std::string(vocab::rdf::first), *it);
          emit(cell, std::string(vocab::rdf::rest), head);
          head = cell;
        }
        emit(frame.subject, frame.predicate, head);
        break;
      }
    }
    path_.pop_back();
  }

  const ParseOptions& options_;
  const TripleSink& sink_;
  XML_Parser parser_;
  std::vector<Frame> frames_;
  std::vector<std::string> path_;
  std::exception_ptr pending_;
  std::size_t anon_ = 0;
};

}  // namespace

void parse_rdfxml(std::string_view document, const ParseOptions& options, const TripleSink& sink) {
  RdfXmlParser parser(options, sink);
  parser.run(document);
}

}  // namespace ontolookup::rdf::detail
