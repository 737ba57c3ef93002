import pytest

from equitynet.cards import (
    Card,
    CardParseError,
    FULL_DECK,
    HandCategory,
    HandRank,
    InvalidCardsError,
    ShowdownResult,
    Suit,
    compare_showdown,
    evaluate_best,
    format_card,
    format_cards,
    parse_card,
    parse_cards,
)


def hand(text):
    return tuple(parse_cards(text))


class TestCardBasics:
    def test_deck_is_52_unique(self):
        assert len(FULL_DECK) == 52
        assert len(set(FULL_DECK)) == 52

    def test_card_id_round_trip(self):
        for card in FULL_DECK:
            assert Card.from_id(card.card_id) == card
        assert sorted(c.card_id for c in FULL_DECK) == list(range(52))

    def test_parse_format_round_trip(self):
        for card in FULL_DECK:
            assert parse_card(format_card(card)) == card

    def test_parse_is_case_tolerant(self):
        assert parse_card("ah") == parse_card("Ah") == Card(14, Suit.HEARTS)
        assert parse_card("tC") == Card(10, Suit.CLUBS)

    def test_parse_rejects_garbage(self):
        for bad in ("", "A", "Ahh", "1h", "Zx", "Az"):
            with pytest.raises(CardParseError):
                parse_card(bad)

    def test_parse_cards_splits_on_whitespace(self):
        cards = parse_cards("Ah  Kd\tQs")
        assert format_cards(cards) == "Ah Kd Qs"

    def test_ordering_by_rank_then_suit(self):
        assert parse_card("2c") < parse_card("2d") < parse_card("3c")
        assert max(FULL_DECK) == Card(14, Suit.SPADES)


class TestEvaluateBest:
    @pytest.mark.parametrize(
        "text,category,tiebreakers",
        [
            ("Ah Kh Qh Jh Th", HandCategory.STRAIGHT_FLUSH, (14,)),
            ("Ah 2h 3h 4h 5h", HandCategory.STRAIGHT_FLUSH, (5,)),
            ("9c 9d 9h 9s 2c", HandCategory.FOUR_OF_A_KIND, (9, 2)),
            ("9c 9d 9h 9s Ac Ad Ah", HandCategory.FOUR_OF_A_KIND, (9, 14)),
            ("Kc Kd Kh 4c 4d", HandCategory.FULL_HOUSE, (13, 4)),
            # two trips in seven cards: the lower trip fills the pair slot
            ("Kc Kd Kh 4c 4d 4h 2s", HandCategory.FULL_HOUSE, (13, 4)),
            ("Ac Qc 9c 5c 3c", HandCategory.FLUSH, (14, 12, 9, 5, 3)),
            ("5h 6c 7d 8s 9h", HandCategory.STRAIGHT, (9,)),
            ("Ah 2c 3d 4s 5h", HandCategory.STRAIGHT, (5,)),
            ("Ah 2c 3d 4s 5h 6d", HandCategory.STRAIGHT, (6,)),
            ("7c 7d 7h Ks Qc", HandCategory.THREE_OF_A_KIND, (7, 13, 12)),
            ("Jc Jd 8h 8s Ac", HandCategory.TWO_PAIR, (11, 8, 14)),
            # three pairs in seven cards: best two plus best leftover kicker
            ("Qc Qd 9h 9s 5c 5d Kh", HandCategory.TWO_PAIR, (12, 9, 13)),
            ("Tc Td Ah 7s 3c", HandCategory.PAIR, (10, 14, 7, 3)),
            ("Ac Jd 9h 6s 3c", HandCategory.HIGH_CARD, (14, 11, 9, 6, 3)),
            # flush beats a lower straight present in the same seven cards
            ("2h 4h 6h 8h Th 5c 7d", HandCategory.FLUSH, (10, 8, 6, 4, 2)),
        ],
    )
    def test_known_hands(self, text, category, tiebreakers):
        rank = evaluate_best(hand(text))
        assert rank.category == category
        assert rank.tiebreakers == tiebreakers

    def test_partial_hands(self):
        assert evaluate_best(hand("Ah As")).category == HandCategory.PAIR
        assert evaluate_best(hand("Ah Ks")).category == HandCategory.HIGH_CARD
        assert evaluate_best(hand("Ah As Kd Ks")).category == HandCategory.TWO_PAIR

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidCardsError):
            evaluate_best(hand("Ah"))
        with pytest.raises(InvalidCardsError):
            evaluate_best(hand("Ah Kh Qh Jh Th 9h 8h 7h"))
        with pytest.raises(InvalidCardsError):
            evaluate_best((parse_card("Ah"), parse_card("Ah")))

    def test_wheel_is_lowest_straight(self):
        wheel = evaluate_best(hand("Ah 2c 3d 4s 5h"))
        six_high = evaluate_best(hand("2c 3d 4s 5h 6d"))
        assert wheel < six_high

    def test_seven_cards_pick_best_five(self):
        rank = evaluate_best(hand("Ah Kh Qh Jh Th 9h 8h"))
        assert rank == HandRank(HandCategory.STRAIGHT_FLUSH, (14,))


class TestCompareShowdown:
    def test_outcomes(self):
        board = hand("2c 7d 9h Js Qd")
        a = hand("Ah As") + board
        b = hand("Kd Kc") + board
        assert compare_showdown(evaluate_best(a), evaluate_best(b)) == ShowdownResult.A_WINS
        assert compare_showdown(evaluate_best(b), evaluate_best(a)) == ShowdownResult.B_WINS

    def test_tie_on_board_play(self):
        board = hand("Ah Kd Qs Jc Tc")
        a = evaluate_best(hand("2c 3d") + board)
        b = evaluate_best(hand("7h 8s") + board)
        assert compare_showdown(a, b) == ShowdownResult.TIE

    def test_kicker_decides(self):
        board = hand("9c 9d 5h 6s 2d")
        a = evaluate_best(hand("Ah 3c") + board)
        b = evaluate_best(hand("Kh 3d") + board)
        assert compare_showdown(a, b) == ShowdownResult.A_WINS
