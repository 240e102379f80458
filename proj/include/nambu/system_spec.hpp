// System source selection: the built-in Frenet instance or a JSON file
// holding the field and optional generating structures.
//
// File format:
//   {
//     "field": ["<poly>", "<poly>", "<poly>"],            // optional
//     "hamiltonians": ["<poly>", "<poly>"],               // optional
//     "vector_hamiltonian": ["<poly>", "<poly>", "<poly>"] // optional
//   }
// At least one of the three must be present; a missing field is derived
// from the Hamiltonian pair (unit-convention Nambu flow) or from the
// vector Hamiltonian (rot h), in that order.
#pragma once

#include <fstream>
#include <optional>
#include <string>

#include "frenet.hpp"
#include "json_io.hpp"
#include "mechanics.hpp"

namespace nambu {

struct SystemSpec {
    std::string name;
    bool builtin = false;
    VecField field{Alphabet::position};
    std::optional<NambuPair> hamiltonians;
    std::optional<VecField> vector_hamiltonian;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline SystemSpec frenet_system() {
    SystemSpec s;
    s.name = "frenet";
    s.builtin = true;
    s.field = frenet::motion();
    s.hamiltonians = frenet::hamiltonians();
    s.vector_hamiltonian = frenet::vector_hamiltonian();
    return s;
}

namespace detail {

inline VecField vec_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument(std::string(what) +
                                    " must be an array of 3 polynomials");
    return {parse_poly(j[0].get<std::string>()),
            parse_poly(j[1].get<std::string>()),
            parse_poly(j[2].get<std::string>())};
}

}  // namespace detail

inline SystemSpec load_system(const std::string& source) {
    if (source == "frenet") return frenet_system();

    std::ifstream in(source);
    if (!in) throw IoError("cannot open system file: " + source);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("system file is not valid JSON: ") +
                             e.what(),
                         0);
    }

    SystemSpec s;
    s.name = source;
    if (j.contains("hamiltonians")) {
        const Json& h = j.at("hamiltonians");
        if (!h.is_array() || h.size() != 2)
            throw std::invalid_argument(
                "hamiltonians must be an array of 2 polynomials");
        s.hamiltonians = NambuPair{parse_poly(h[0].get<std::string>()),
                                   parse_poly(h[1].get<std::string>())};
    }
    if (j.contains("vector_hamiltonian"))
        s.vector_hamiltonian =
            detail::vec_from_json(j.at("vector_hamiltonian"), "vector_hamiltonian");

    if (j.contains("field")) {
        s.field = detail::vec_from_json(j.at("field"), "field");
    } else if (s.hamiltonians) {
        s.field = nambu_flow_field(*s.hamiltonians, Convention::unit);
    } else if (s.vector_hamiltonian) {
        s.field = vh_flow_field(*s.vector_hamiltonian);
    } else {
        throw std::invalid_argument(
            "system file must provide a field, a Hamiltonian pair, or a "
            "vector Hamiltonian");
    }
    return s;
}

}  // namespace nambu
