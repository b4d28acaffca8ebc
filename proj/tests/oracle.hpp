#pragma once

// Reference decimals produced by an independent arbitrary-precision library
// at 70 significant digits.

namespace oracle {

constexpr const char* kPi =
    "3.141592653589793238462643383279502884197169399375105820974944592307816";
constexpr const char* kCatalan =
    "0.915965594177219015054603514932384110774149374281672134266498119621763";
constexpr const char* kGammaQuarter =
    "3.625609908221908311930685155867672002995167682880065467433377999569919";
constexpr const char* kTrigammaQuarter =
    "17.19732915450711073927131911933522402150689440149416770054533433319415";
constexpr const char* kDigammaThird =
    "-3.132033780020806322996419074287268854155428296720418064192751203035171";
constexpr const char* kTetragammaTwoSevenths =
    "-86.98348226334630716074455329965988554416212464527941620078882939700633";
constexpr const char* kGammaSevenThirds =
    "1.190639348758998948291419084877634508501639723536578267089079256706852";
constexpr const char* kLog2 =
    "0.6931471805599453094172321214581765680755001343602552541206800094933936";
constexpr const char* kTanPiFifth =
    "0.7265425280053608858954667574806187496160923929652084627500663273457494";
/// 2 log 2 = sum_k (1/2)^k / (k+1).
constexpr const char* kTwoLog2 =
    "1.386294361119890618834464242916353136151000268720510508241360018986787";

}  // namespace oracle
