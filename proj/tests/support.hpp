#pragma once

#include <string>

#include "cyclo2/gralg.hpp"
#include "cyclo2/presentation.hpp"

inline cyclo2::Algebra fixture(const std::string& name)
{
    return cyclo2::Algebra(cyclo2::load_presentation(std::string(CYCLO2_FIXTURES) + "/" + name + ".pres"));
}

inline cyclo2::Element elem(const cyclo2::Algebra& A, const std::string& text)
{
    cyclo2::Poly poly;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t plus = text.find('+', pos);
        std::string term = text.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        cyclo2::Mono t(A.num_generators(), 0);
        std::string tok;
        auto flush = [&]() {
            if (tok.empty() || tok == "1") {
                tok.clear();
                return;
            }
            int e = 1;
            auto hat = tok.find('^');
            std::string nm = tok.substr(0, hat);
            if (hat != std::string::npos)
                e = std::stoi(tok.substr(hat + 1));
            for (std::size_t g = 0; g < A.num_generators(); ++g)
                if (A.presentation().generators[g].name == nm)
                    t[g] = uint16_t(t[g] + e);
            tok.clear();
        };
        for (char c : term) {
            if (c == ' ')
                continue;
            if (c == '*')
                flush();
            else
                tok += c;
        }
        flush();
        poly.push_back(t);
        if (plus == std::string::npos)
            break;
        pos = plus + 1;
    }
    return A.to_element(A.normal_form(poly));
}
