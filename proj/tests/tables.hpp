#pragma once

// Published multiple tuples used as fixtures by the unit and acceptance tests.

#include <string>
#include <vector>

#include "emgraph/classify.hpp"

namespace fixtures {

struct TripleRow {
  std::vector<unsigned long> p;
  const char* modulus;
  const char* a;
};

inline const std::vector<TripleRow> kTriples = {
    {{2, 3, 5}, "30", "19"},
    {{3, 2, 5}, "30", "29"},
    {{7, 5, 17}, "595", "237"},
    {{211, 197, 2969}, "123412423", "114015537"},
    {{601, 577, 14449}, "5010580873", "4793484647"},
    {{8191, 8101, 737281}, "48922495303771", "48372940054709"},
    {{22921, 21169, 276949}, "134379711825901", "123251758931063"},
};

struct QuadRow {
  std::vector<unsigned long> p;
  const char* modulus;
  std::vector<const char*> residues;
  emgraph::QuadCase tag;
};

using emgraph::QuadCase;
inline const std::vector<QuadRow> kQuadruples = {
    {{2, 5, 7, 3}, "210", {"107", "149"}, QuadCase::II},
    {{3, 13, 2, 7}, "546", {"181", "251"}, QuadCase::I},
    {{3, 2, 11, 13}, "858", {"467", "779"}, QuadCase::I},
    {{11, 3, 2, 13}, "858", {"571"}, QuadCase::IV},
    {{13, 3, 2, 11}, "858", {"857"}, QuadCase::IV},
    {{3, 19, 11, 2}, "1254", {"1127"}, QuadCase::IV},
    {{7, 3, 2, 41}, "1722", {"1721"}, QuadCase::IV},
    {{41, 3, 2, 7}, "1722", {"1147"}, QuadCase::IV},
    {{41, 7, 2, 3}, "1722", {"491"}, QuadCase::IV},
    {{41, 7, 3, 2}, "1722", {"1639"}, QuadCase::IV},
    {{5, 29, 2, 17}, "4930", {"3909"}, QuadCase::IV},
    {{13, 2, 5, 43}, "5590", {"3353", "5589"}, QuadCase::III},
    {{2, 3, 31, 37}, "6882", {"1183", "5771"}, QuadCase::II},
    {{3, 7, 17, 89}, "31773", {"22427", "26966"}, QuadCase::II},
    {{103, 31, 2, 5}, "31930", {"5149"}, QuadCase::IV},
    {{7, 23, 2, 107}, "34454", {"29959"}, QuadCase::IV},
    {{3, 17, 31, 79}, "124899", {"81764", "81922"}, QuadCase::I},
    {{41, 17, 2, 199}, "277406", {"32635"}, QuadCase::IV},
    {{5, 53, 37, 43}, "421615", {"39559", "173203"}, QuadCase::II},
    {{73, 5, 13, 593}, "2813785", {"1125513", "1861426"}, QuadCase::III},
    {{449, 67, 2, 191}, "11491706", {"6517683"}, QuadCase::IV},
    {{241, 2, 113, 3631}, "197766046", {"183764909", "42003407"}, QuadCase::III},
    {{2, 3541, 997, 103}, "727257662", {"714062125"}, QuadCase::IV},
    {{23, 367, 401, 421}, "1425018061", {"418499259", "1226476565"}, QuadCase::II},
};

struct SmallModulusRow {
  std::vector<unsigned long> primes;
  const char* modulus;
  std::vector<const char*> residues;
  const char* inverse_density;
};

inline const std::vector<SmallModulusRow> kCoprimeModuli = {
    {{5, 13, 73, 593}, "2813785", {"1125513", "1861426"}, "1022976"},
    {{5, 11, 13, 79, 523}, "29541655", {"2913109", "19876614"}, "9771840"},
    {{5, 13, 17, 53, 563}, "32972095", {"45473", "14501753", "15173846", "15665474"}, "5611008"},
    {{5, 11, 23, 31, 1307}, "51254005", {"29374824", "37354844"}, "17239200"},
    {{5, 13, 23, 31, 41, 61}, "115908845", {"30432518", "43262953", "74975328", "87805763"},
     "19008000"},
    {{197, 211, 2969}, "123412423", {"114015537"}, "122162880"},
    {{5, 11, 23, 67, 1831}, "155186405", {"92870549"}, "106286400"},
    {{5, 13, 19, 23, 71, 89}, "179491195", {"106001778", "120823468", "140339224", "145796156"},
     "29272320"},
    {{5, 13, 29, 61, 1597}, "183631045", {"16718992", "26947777", "40801752", "51030537"},
     "32175360"},
    {{5, 11, 13, 41, 73, 113}, "241819435", {"31106978", "108457851"}, "77414400"},
    {{5, 11, 13, 17, 97, 233}, "274715155", {"161397329", "273388114"}, "85524480"},
    {{5, 11, 13, 733, 773}, "405125435", {"26064013", "332551556"}, "135624960"},
    {{5, 11, 19, 41, 83, 127}, "451629145", {"16717776", "363759119"}, "148780800"},
    {{5, 13, 19, 23, 37, 449}, "471892265", {"331562178", "399028904"}, "153280512"},
    {{5, 19, 53, 337, 421}, "714350695", {"171690041", "516232304"}, "264176640"},
    {{5, 11, 19, 53, 71, 199}, "782534665", {"504298018", "599617009"}, "259459200"},
    {{11, 19, 29, 71, 1871}, "805149301", {"159790883", "664072158"}, "329868000"},
    {{5, 11, 23, 61, 67, 167}, "863399185", {"132876677", "201396989"}, "289238400"},
};

}  // namespace fixtures
