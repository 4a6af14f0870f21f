#include "msie/sentiment.hpp"

namespace msie {

// Default training corpus for the review polarity model: short rental-review
// templates, 100 per class. Override with --labeled-corpus.
const std::vector<std::pair<std::string, bool>>& builtin_labeled_corpus() {
  static const std::vector<std::pair<std::string, bool>> corpus = {
      {"great location and very clean apartment", true},
      {"the host was friendly and helpful", true},
      {"amazing stay would definitely come back", true},
      {"cozy room with a comfortable bed", true},
      {"everything was perfect highly recommend", true},
      {"beautiful view from the balcony", true},
      {"spotless kitchen and modern bathroom", true},
      {"check in was smooth and easy", true},
      {"quiet neighborhood and close to the subway", true},
      {"the apartment was exactly as described", true},
      {"wonderful host great communication", true},
      {"lovely place with fast wifi", true},
      {"super clean and well decorated", true},
      {"fantastic value for the price", true},
      {"the bed was so comfortable we slept great", true},
      {"bright spacious living room loved it", true},
      {"host responded quickly to every question", true},
      {"perfect location near restaurants and shops", true},
      {"charming studio with everything we needed", true},
      {"we had a wonderful time here", true},
      {"would stay again without hesitation", true},
      {"very tidy and smells fresh", true},
      {"the photos match the apartment perfectly", true},
      {"excellent amenities and thoughtful touches", true},
      {"great host who gave us local tips", true},
      {"convenient transport links right outside", true},
      {"warm welcome and a spotless home", true},
      {"stylish interior and very comfortable", true},
      {"plenty of space for our family", true},
      {"the kitchen had everything we needed", true},
      {"quiet at night and sunny in the morning", true},
      {"immaculate bathroom with great shower", true},
      {"five stars for cleanliness and comfort", true},
      {"lovely garden and peaceful terrace", true},
      {"the host made us feel at home", true},
      {"best airbnb experience we have had", true},
      {"close to everything yet very quiet", true},
      {"fresh towels and crisp clean sheets", true},
      {"a truly delightful and relaxing stay", true},
      {"good price great space friendly host", true},
      {"the place was better than the pictures", true},
      {"smooth self check in clear instructions", true},
      {"comfortable sofa and a huge tv", true},
      {"loved the decor and the cozy vibe", true},
      {"heating worked great apartment was warm", true},
      {"wonderful neighborhood full of cafes", true},
      {"the host left snacks and a kind note", true},
      {"easy walk to the train station", true},
      {"spacious bright and very well kept", true},
      {"superb stay everything spotless", true},
      {"quick responses and flexible check out", true},
      {"modern appliances and a comfy bed", true},
      {"we appreciated the thoughtful welcome guide", true},
      {"safe area and secure building", true},
      {"balcony view was absolutely stunning", true},
      {"great water pressure and hot shower", true},
      {"ideal for a weekend getaway", true},
      {"the apartment is well maintained and airy", true},
      {"generous host with excellent recommendations", true},
      {"beds freshly made and bathroom sparkling", true},
      {"really enjoyed our stay here", true},
      {"location is unbeatable for sightseeing", true},
      {"clean quiet and exactly as advertised", true},
      {"the host greeted us warmly at arrival", true},
      {"all the amenities worked perfectly", true},
      {"nice touch with coffee and tea provided", true},
      {"a gem of an apartment highly recommended", true},
      {"the living room is bright and welcoming", true},
      {"felt completely at home the whole week", true},
      {"parking was easy and the street is calm", true},
      {"terrific host spotless flat great price", true},
      {"the rooftop terrace made our evenings", true},
      {"everything spotless and in perfect order", true},
      {"delightful decor comfortable furniture", true},
      {"you can walk everywhere from here", true},
      {"host shared wonderful restaurant tips", true},
      {"very secure and quiet building", true},
      {"the mattress was firm and comfortable", true},
      {"air conditioning worked flawlessly", true},
      {"beautifully renovated with care", true},
      {"our kids loved the spacious bedroom", true},
      {"thoughtful host quick helpful replies", true},
      {"the view over the park is lovely", true},
      {"fresh flowers and a spotless kitchen", true},
      {"wifi was fast and reliable", true},
      {"perfect base for exploring the city", true},
      {"the place sparkles and smells lovely", true},
      {"gracious host seamless arrival", true},
      {"sunny balcony great for breakfast", true},
      {"tidy well equipped and welcoming", true},
      {"we will absolutely book this place again", true},
      {"peaceful street close to the market", true},
      {"comfortable stay from start to finish", true},
      {"the studio is small but perfectly arranged", true},
      {"spotlessly clean with lovely linens", true},
      {"host went above and beyond for us", true},
      {"excellent shower and plenty of hot water", true},
      {"bright clean quiet simply wonderful", true},
      {"a flawless stay thank you so much", true},
      {"the dirty bathroom ruined our stay", false},
      {"host never answered our messages", false},
      {"the apartment smelled musty and damp", false},
      {"noisy street we could not sleep", false},
      {"photos are misleading the flat is tiny", false},
      {"broken heater and cold rooms", false},
      {"we found hair in the sheets disgusting", false},
      {"check in was a confusing mess", false},
      {"the kitchen was greasy and filthy", false},
      {"terrible experience would not return", false},
      {"the wifi never worked during our stay", false},
      {"uncomfortable bed with stained mattress", false},
      {"loud neighbors argued all night", false},
      {"the shower leaked all over the floor", false},
      {"dusty shelves and sticky floors", false},
      {"host cancelled on us last minute", false},
      {"the place was nothing like the listing", false},
      {"cockroaches in the kitchen horrifying", false},
      {"freezing apartment with drafty windows", false},
      {"rude host who blamed us for everything", false},
      {"the toilet was clogged when we arrived", false},
      {"overpriced for such a shabby room", false},
      {"mold in the bathroom corners", false},
      {"we left early because of the smell", false},
      {"broken lock felt completely unsafe", false},
      {"the mattress sagged and springs creaked", false},
      {"trash was left from previous guests", false},
      {"construction noise started at dawn", false},
      {"no hot water the entire weekend", false},
      {"dirty dishes piled in the sink", false},
      {"the elevator was broken five floors up", false},
      {"awful stay the worst airbnb yet", false},
      {"stains on the couch and carpet", false},
      {"the host lied about the location", false},
      {"windows would not close cold all night", false},
      {"a disappointing and frustrating visit", false},
      {"the room reeked of cigarettes", false},
      {"keys did not work we waited hours", false},
      {"damp towels and unwashed sheets", false},
      {"the listing hides the terrible street noise", false},
      {"grimy windows and dusty curtains", false},
      {"our booking was a complete disaster", false},
      {"the fridge was broken food spoiled", false},
      {"tiny cramped and badly lit", false},
      {"unresponsive host and broken promises", false},
      {"the heating bill scam was outrageous", false},
      {"bathroom door did not even close", false},
      {"felt unsafe walking to the entrance", false},
      {"they charged us extra for nothing", false},
      {"the floor was sticky everywhere", false},
      {"horrible smell from the drains", false},
      {"neighbors partied until sunrise", false},
      {"the pictures are years out of date", false},
      {"worst customer service imaginable", false},
      {"the balcony was unusable and dirty", false},
      {"bedbugs we had to throw out clothes", false},
      {"the host entered without warning", false},
      {"peeling paint and water damage", false},
      {"a noisy bar right below the bedroom", false},
      {"we regret booking this place", false},
      {"appliances old broken and dangerous", false},
      {"the sofa bed was torn and uncomfortable", false},
      {"dreadful stay avoid this listing", false},
      {"cold shower every single morning", false},
      {"dust everywhere allergies went wild", false},
      {"the advertised parking did not exist", false},
      {"misleading listing and hidden fees", false},
      {"the flat above leaked into our kitchen", false},
      {"never again absolutely terrible", false},
      {"the air conditioner rattled loudly", false},
      {"moldy smell in every room", false},
      {"host refused to fix anything", false},
      {"filthy entrance and broken stairs", false},
      {"the bed linen smelled of sweat", false},
      {"unbearably hot with no ventilation", false},
      {"street lights flooded the bedroom", false},
      {"the description promised a view we got a wall", false},
      {"crumbs and stains on every surface", false},
      {"shabby furniture falling apart", false},
      {"the buzzer was broken we stood in rain", false},
      {"a cramped airless disappointing room", false},
      {"dirty socks left under the bed", false},
      {"the oven sparked scary and unsafe", false},
      {"poor communication and late check in", false},
      {"the whole building smelled of sewage", false},
      {"our worst travel experience so far", false},
      {"they cancelled then relisted at higher price", false},
      {"bathroom tiles cracked and grim", false},
      {"the radiator leaked rusty water", false},
      {"paper thin walls heard everything", false},
      {"not clean not comfortable not worth it", false},
      {"the host was hostile at checkout", false},
      {"zero towels zero soap zero care", false},
      {"the couch smelled like wet dog", false},
      {"sticky remote and stained pillows", false},
      {"a truly awful and dirty apartment", false},
      {"the window latch was broken all night noise", false},
      {"disgusting kitchen we ate out every meal", false},
      {"cold damp and utterly miserable", false},
      {"avoid this place at all costs", false},
  };
  return corpus;
}

}  // namespace msie
