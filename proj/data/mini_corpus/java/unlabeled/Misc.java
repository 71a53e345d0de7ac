package corpus.misc;

import java.util.List;

public class Misc {

    public static void sortScores(int[] scores) {
        for (int pass = 0; pass < scores.length - 1; pass++) {
            for (int k = 0; k < scores.length - 1 - pass; k++) {
                if (scores[k] > scores[k + 1]) {
                    int tmp = scores[k];
                    scores[k] = scores[k + 1];
                    scores[k + 1] = tmp;
                }
            }
        }
    }

    public static int reduceFraction(int numerator, int denominator) {
        int a = Math.abs(numerator);
        int b = Math.abs(denominator);
        while (b != 0) {
            int r = a % b;
            a = b;
            b = r;
        }
        return a;
    }

    public static boolean isMirrorWord(String w) {
        for (int i = 0; i < w.length() / 2; i++) {
            if (w.charAt(i) != w.charAt(w.length() - 1 - i)) {
                return false;
            }
        }
        return true;
    }

    public static String greet(String name) {
        return "Hello, " + name + "!";
    }

    public static int sum(List<Integer> values) {
        int total = 0;
        for (int v : values) {
            total += v;
        }
        return total;
    }
}
