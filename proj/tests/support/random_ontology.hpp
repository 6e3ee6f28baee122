#pragma once

#include <random>
#include <string>

// Random Turtle bodies (prefix ':' and the OWL vocabularies assumed) mixing
// well-formed and malformed OWL constructs. With `with_sharing`, also blank
// nodes that are shared, cyclic, or reified by pointer and by copy.
inline std::string random_document(std::mt19937& rng, bool with_sharing = false) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  auto cls = [&] { return ":c" + std::to_string(pick(8)); };
  std::string doc;
  int statements = 5 + pick(25);
  int blanks = 0;
  for (int i = 0; i < statements; ++i) {
    if (with_sharing && pick(4) == 0) {
      std::string b = "_:s" + std::to_string(blanks++);
      std::string c = cls();
      switch (pick(4)) {
        case 0:  // reification pointing at the asserted blank node itself
          doc += c + " rdfs:subClassOf " + b + " .\n" + b + " owl:onProperty :p ; owl:someValuesFrom " + cls() +
                 " .\n[] a owl:Axiom ; owl:annotatedSource " + c + " ; owl:annotatedProperty rdfs:subClassOf ; owl:annotatedTarget " +
                 b + " ; :src \"shared\" .\n";
          break;
        case 1:  // reification carrying a structural copy of the target
          doc += c + " rdfs:subClassOf [ owl:onProperty :p ; owl:someValuesFrom :c1 ] .\n[] a owl:Axiom ; owl:annotatedSource " +
                 c + " ; owl:annotatedProperty rdfs:subClassOf ; owl:annotatedTarget [ owl:onProperty :p ; owl:someValuesFrom :c1 ] ; :src [ :page \"3\" ] .\n";
          break;
        case 2:  // annotation cycle through blank nodes
          doc += c + " :ann " + b + " .\n" + b + " :next " + b + "x .\n" + b + "x :next " + b + " .\n";
          break;
        default:  // one blank node referenced twice
          doc += c + " :ann " + b + " , " + b + " .\n" + b + " :v \"shared\" .\n";
          break;
      }
      continue;
    }
    switch (pick(14)) {
      case 0: doc += cls() + " a owl:Class .\n"; break;
      case 1: doc += cls() + " rdfs:label \"l" + std::to_string(pick(4)) + "\"@" + (pick(2) ? "en" : "DE") + " .\n"; break;
      case 2: doc += cls() + " rdfs:subClassOf " + cls() + " .\n"; break;
      case 3: doc += cls() + " rdfs:subClassOf [ a owl:Restriction ; owl:onProperty :p ; owl:someValuesFrom " + cls() + " ] .\n"; break;
      case 4: doc += cls() + " rdfs:subClassOf [ owl:someValuesFrom " + cls() + " ] .\n"; break;
      case 5: doc += cls() + " owl:disjointWith " + cls() + " .\n"; break;
      case 6: doc += "[] a owl:AllDisjointClasses ; owl:members ( " + cls() + " " + cls() + " ) .\n"; break;
      case 7: {
        doc += ":p" + std::to_string(pick(3)) + " owl:propertyChainAxiom (";
        int n = 1 + pick(3);
        for (int k = 0; k < n; ++k) doc += " :q" + std::to_string(pick(3));
        doc += " ) .\n";
        break;
      }
      case 8: {
        std::string c = cls();
        doc += c + " rdfs:comment \"n\" .\n[] a owl:Axiom ; owl:annotatedSource " + c +
               " ; owl:annotatedProperty rdfs:comment ; owl:annotatedTarget \"n\" ; :src \"s" +
               std::to_string(pick(3)) + "\" .\n";
        break;
      }
      case 9: doc += "[] a owl:Axiom ; owl:annotatedSource " + cls() + " ; :src \"bad\" .\n"; break;
      case 10: doc += "_:lone :p \"orphan\" .\n"; break;
      case 11: doc += cls() + " :ann [ :nested [ :deep \"v\" ] ] .\n"; break;
      case 12: doc += cls() + " owl:equivalentClass [ owl:intersectionOf ( " + cls() + " [ owl:onProperty :p ; owl:allValuesFrom " + cls() + " ] ) ] .\n"; break;
      default: doc += ":ind" + std::to_string(pick(3)) + " a " + cls() + " .\n"; break;
    }
  }
  return doc;
}
