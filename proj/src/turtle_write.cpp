#include "tkb/errors.hpp"
#include "tkb/turtle.hpp"

namespace tkb {

namespace {

std::string role_term(const RoleExpr& r) {
    switch (r.kind) {
    case RoleExpr::Kind::Named:
        return ":" + r.name;
    case RoleExpr::Kind::Inverse:
        return "[ owl:inverseOf :" + r.name + " ]";
    case RoleExpr::Kind::Universal:
        throw UnsupportedConstructError("the universal role has no Turtle mapping");
    }
    return "";
}

std::string concept_term(const ConceptPtr& c);

std::string concept_list(const std::vector<ConceptPtr>& args) {
    std::string out = "(";
    for (const auto& a : args) out += " " + concept_term(a);
    return out + " )";
}

std::string concept_term(const ConceptPtr& c) {
    switch (c->kind()) {
    case ConceptKind::Atomic:
        return ":" + c->name();
    case ConceptKind::Top:
        return "owl:Thing";
    case ConceptKind::Bottom:
        return "owl:Nothing";
    case ConceptKind::Not:
        return "[ owl:complementOf " + concept_term(c->child()) + " ]";
    case ConceptKind::And:
        return "[ owl:intersectionOf " + concept_list(c->args()) + " ]";
    case ConceptKind::Or:
        return "[ owl:unionOf " + concept_list(c->args()) + " ]";
    case ConceptKind::Exists:
        return "[ a owl:Restriction ; owl:onProperty " + role_term(c->role()) +
               " ; owl:someValuesFrom " + concept_term(c->filler()) + " ]";
    case ConceptKind::ForAll:
        return "[ a owl:Restriction ; owl:onProperty " + role_term(c->role()) +
               " ; owl:allValuesFrom " + concept_term(c->filler()) + " ]";
    case ConceptKind::AtLeast:
        return "[ a owl:Restriction ; owl:onProperty " + role_term(c->role()) +
               " ; owl:minQualifiedCardinality \"" + std::to_string(c->cardinality()) +
               "\"^^xsd:nonNegativeInteger ; owl:onClass " + concept_term(c->filler()) + " ]";
    case ConceptKind::AtMost:
        return "[ a owl:Restriction ; owl:onProperty " + role_term(c->role()) +
               " ; owl:maxQualifiedCardinality \"" + std::to_string(c->cardinality()) +
               "\"^^xsd:nonNegativeInteger ; owl:onClass " + concept_term(c->filler()) + " ]";
    case ConceptKind::Self:
        return "[ a owl:Restriction ; owl:onProperty " + role_term(c->role()) +
               " ; owl:hasSelf \"true\"^^xsd:boolean ]";
    case ConceptKind::Nominal: {
        std::string out = "[ owl:oneOf (";
        for (const auto& i : c->individuals()) out += " :" + i;
        return out + " ) ]";
    }
    }
    return "";
}

std::string role_list(const std::vector<RoleExpr>& roles) {
    std::string out = "(";
    for (const auto& r : roles) out += " " + role_term(r);
    return out + " )";
}

std::string axiom_group(const Axiom& ax) {
    switch (ax.kind) {
    case AxiomKind::ConceptInclusion:
        return concept_term(ax.c1) + " rdfs:subClassOf " + concept_term(ax.c2) + " .";
    case AxiomKind::ConceptEquivalence:
        return concept_term(ax.c1) + " owl:equivalentClass " + concept_term(ax.c2) + " .";
    case AxiomKind::RoleDomain:
        return role_term(ax.r1) + " rdfs:domain " + concept_term(ax.c1) + " .";
    case AxiomKind::RoleRange:
        return role_term(ax.r1) + " rdfs:range " + concept_term(ax.c1) + " .";
    case AxiomKind::ConceptAssertion:
        return ":" + ax.i1 + " a " + concept_term(ax.c1) + " .";
    case AxiomKind::RoleAssertion:
        if (ax.r1.is_universal()) {
            throw UnsupportedConstructError("the universal role has no Turtle mapping");
        }
        return ":" + ax.i1 + " :" + ax.r1.name + " :" + ax.i2 + " .";
    case AxiomKind::NegatedRoleAssertion:
        if (ax.r1.is_universal()) {
            throw UnsupportedConstructError("the universal role has no Turtle mapping");
        }
        return "[] a owl:NegativePropertyAssertion ; owl:sourceIndividual :" + ax.i1 +
               " ; owl:assertionProperty :" + ax.r1.name + " ; owl:targetIndividual :" + ax.i2 +
               " .";
    case AxiomKind::SameIndividual:
        return ":" + ax.i1 + " owl:sameAs :" + ax.i2 + " .";
    case AxiomKind::DifferentIndividuals:
        return ":" + ax.i1 + " owl:differentFrom :" + ax.i2 + " .";
    case AxiomKind::RoleInclusion:
        return role_term(ax.r1) + " rdfs:subPropertyOf " + role_term(ax.r2) + " .";
    case AxiomKind::RoleEquivalence:
        return role_term(ax.r1) + " owl:equivalentProperty " + role_term(ax.r2) + " .";
    case AxiomKind::ComplexRoleInclusion:
        return role_term(ax.r2) + " owl:propertyChainAxiom " + role_list(ax.chain) + " .";
    case AxiomKind::TransitiveRole:
        return role_term(ax.r1) + " a owl:TransitiveProperty .";
    case AxiomKind::DisjointRoles:
        return "[] a owl:AllDisjointProperties ; owl:members ( " + role_term(ax.r1) + " " +
               role_term(ax.r2) + " ) .";
    case AxiomKind::AsymmetricRole:
        return role_term(ax.r1) + " a owl:AsymmetricProperty .";
    case AxiomKind::ReflexiveRole:
        return role_term(ax.r1) + " a owl:ReflexiveProperty .";
    case AxiomKind::IrreflexiveRole:
        return role_term(ax.r1) + " a owl:IrreflexiveProperty .";
    }
    return "";
}

} // namespace

std::string TurtleDoc::to_string() const {
    std::string out;
    for (const auto& [label, iri] : prefixes) {
        out += "@prefix " + label + ": <" + iri + "> .\n";
    }
    if (!groups.empty()) out += "\n";
    for (const auto& group : groups) {
        out += group;
        out += "\n";
    }
    return out;
}

TurtleDoc to_turtle(const KnowledgeBase& kb) {
    TurtleDoc doc;
    doc.prefixes = {{"rdf", kRdfNs}, {"rdfs", kRdfsNs}, {"owl", kOwlNs},
                    {"xsd", kXsdNs}, {"", kDefaultNs}};
    for (const auto& ax : kb.all_axioms()) doc.groups.push_back(axiom_group(ax));
    return doc;
}

std::string to_turtle_text(const KnowledgeBase& kb) { return to_turtle(kb).to_string(); }

} // namespace tkb
