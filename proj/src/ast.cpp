#include "psr2/ast.hpp"

namespace psr2 {

std::string TypeName::str() const {
    switch (kind) {
        case Kind::Elementary:
            return payable ? name + " payable" : name;
        case Kind::UserDefined:
            return name;
        case Kind::Mapping:
            return "mapping(" + inner[0].str() + " => " + inner[1].str() + ")";
        case Kind::Array:
            return inner[0].str() + "[" + array_length + "]";
    }
    return name;
}

std::string TypeName::abi_str() const {
    switch (kind) {
        case Kind::Elementary:
            return name;
        case Kind::UserDefined:
            return "address";
        case Kind::Mapping:
            return str();
        case Kind::Array:
            return inner[0].abi_str() + "[" + array_length + "]";
    }
    return name;
}

const char* to_string(Visibility v) {
    switch (v) {
        case Visibility::Public: return "public";
        case Visibility::External: return "external";
        case Visibility::Internal: return "internal";
        case Visibility::Private: return "private";
    }
    return "?";
}

const char* to_string(StateMutability m) {
    switch (m) {
        case StateMutability::Payable: return "payable";
        case StateMutability::NonPayable: return "nonpayable";
        case StateMutability::View: return "view";
        case StateMutability::Pure: return "pure";
    }
    return "?";
}

std::string FunctionDef::signature() const {
    std::string sig = name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) sig += ",";
        sig += params[i].type.abi_str();
    }
    return sig + ")";
}

}  // namespace psr2
